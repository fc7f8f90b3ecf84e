#include "trinv/suites.hpp"

#include <gtest/gtest.h>

using namespace trinv;

static const std::string kData = TRINV_DATA_DIR;

TEST(GraphIo, JsonRoundTrip) {
  GraphDocument doc{completeGraph(4), "K", "CompleteGraph D=4"};
  auto back = graphFromJson(Json::parse(graphToJson(doc).dump()));
  EXPECT_EQ(back.graph, doc.graph);
  EXPECT_EQ(back.name, doc.name);
}

TEST(GraphIo, RepeatedImageNamesIndices) {
  auto j = Json::parse(R"({"D": 2, "k": 3, "sigma": [[1, 2, 3], [2, 2, 3]]})");
  try {
    graphFromJson(j);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("color 2, index 2: image 2 already used at index 1"), std::string::npos)
        << e.what();
  }
}

TEST(GraphIo, CycleTextRoundTrip) {
  auto G = multiEntropy(2, 3);
  EXPECT_EQ(graphFromCycleText(graphToCycleText(G)), G);
  auto H = graphFromCycleText("k = 5\n# comment\n2: (1 2)\n");
  EXPECT_EQ(H.D(), 2);
  EXPECT_TRUE(H.sigma(1).isIdentity());
  EXPECT_THROW(graphFromCycleText("k = 2\n1: (1 3)\n"), ParseError);
  EXPECT_THROW(graphFromCycleText("1: (1 2)\n1: (1 2)\n"), ParseError);
}

TEST(GraphIo, DocumentKindsAreDetected) {
  EXPECT_EQ(parseGraphDocument("PT D=3 k=3 fwd=1 bwd=2").graph, partialTranspose(3, 3, {1}, {2}));
  EXPECT_EQ(parseGraphDocument("k = 2\n1: (1 2)\n2: id\n").graph, cycleGraph(2));
  EXPECT_THROW(parseGraphDocument("{ not json"), ParseError);
  EXPECT_THROW(parseGraphDocument(""), ParseError);
}

TEST(TreeScripts, ErrorsCarryLineNumbers) {
  try {
    parseTreeScript("root Melon D=3\nflip x 1 1 Melon D=3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parseTreeScript("flip 1 1 1 Melon D=3\n"), ParseError);
  EXPECT_THROW(parseTreeScript("root Melon D=3\nassume nothing\n"), ParseError);
}

TEST(TreeScripts, InlineGraphOperand) {
  auto s = parseTreeScript("root graph (1 2)|id|(1 2)\nunion Melon D=3\n");
  auto t = treeCompose(s);
  EXPECT_EQ(t.graph.k(), 3);
}

TEST(TreeScripts, FixtureFilesMatchBuiltIns) {
  auto fromFile = treeCompose(parseTreeScript(readTextFile(kData + "/fixtures/nine_vertex_flip_chain.tree"),
                                              kData + "/fixtures"));
  auto builtIn = treeCompose(parseTreeScript(fixtures::kNineVertexFlipChain));
  EXPECT_EQ(fromFile.graph, builtIn.graph);
  auto K = parseGraphDocument(readTextFile(kData + "/fixtures/complete_graph_d4.json"));
  EXPECT_TRUE(isIsomorphic(K.graph, completeGraph(4)));
}

TEST(StateIo, WeightsRoundTrip) {
  WeightFunction a(3, {{{1, 2}, 6}, {{1, 2, 3}, 2}});
  auto back = stateFromJson(stateToJson(StateDocument{a}));
  ASSERT_TRUE(std::holds_alternative<WeightFunction>(back));
  EXPECT_EQ(std::get<WeightFunction>(back), a);
}

TEST(StateIo, LabelsParse) {
  auto ghz = parseStateArgument("GHZ", 3);
  ASSERT_TRUE(std::holds_alternative<NamedState>(ghz));
  EXPECT_EQ(std::get<NamedState>(ghz).kind, StateKind::GHZ);
  auto restricted = std::get<NamedState>(parseStateArgument("GHZ|1,3", 3));
  EXPECT_EQ(restricted.B, (ColorSet{1, 3}));
  EXPECT_EQ(std::get<NamedState>(parseStateArgument("star:2", 3)).c, 2);
  EXPECT_THROW(parseStateArgument("tachyon", 3), InvalidArgument);
}

TEST(StateIo, FlowFixturesLoad) {
  auto beta = std::get<WeightFunction>(parseStateArgument(kData + "/fixtures/flow_source.json", 3));
  auto alpha = std::get<WeightFunction>(parseStateArgument(kData + "/fixtures/flow_target.json", 3));
  EXPECT_EQ(std::make_pair(beta, alpha), fixtures::flowExample());
}

TEST(Io, ContentHashIsStable) {
  EXPECT_EQ(contentHash("abc"), contentHash("abc"));
  EXPECT_NE(contentHash("abc"), contentHash("abd"));
}
