// trinv: command-line front end for the trace-invariant library.
//
//   trinv info      --spec "PT D=3 k=3" | --graph FILE | --tree FILE
//   trinv eval      <graph source> --state GHZ [--N 4] [--dense]
//   trinv distinguish --a GHZ --b phi2 --colors 3 [--k-budget 6]
//   trinv order     --a STATE --b STATE --relation lu|lo|locc
//   trinv haar      <graph source> --N 3 [--exact] [--mc 100000] [--asymptotic]
//   trinv table     [--n 2,3] [--csv]
//   trinv verify    identities|tables|complete-graph|binary-op-laws|composition|all
//   trinv third-color --second "(1 2 3 4 5 6 7)(8 9)" [--cycles 4] [--faces 3]
//
// Exit status: 0 success, 1 usage or parse error, 2 internal-consistency failure.

#include "trinv/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace trinv;

namespace {

struct GraphSource {
  std::string spec;
  std::string graphPath;
  std::string treePath;
};

struct LoadedGraph {
  ColoredGraph graph;
  std::string provenance;
  std::optional<TreeResult> tree;
};

struct Common {
  std::uint64_t budget = 0;
  int exhaustiveMaxK = 8;
  std::uint64_t seed = 1;
  bool json = false;
  bool csv = false;
  double tolerance = 5.0;
};

SearchBudget makeBudget(const Common& c) {
  SearchBudget b;
  if (c.budget) b.nodeLimit = c.budget;
  b.exhaustiveMaxK = c.exhaustiveMaxK;
  return b;
}

void addGraphSource(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("--spec", src.spec, "family spec, e.g. \"RM D=3 k=4 first=1 second=2\"");
  cmd->add_option("--graph", src.graphPath, "graph file (JSON or cycle notation)");
  cmd->add_option("--tree", src.treePath, "tree-composition script");
}

void addCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "search-node limit for the compatibility search (env TRINV_BUDGET)");
  cmd->add_option("--exhaustive-max-k", c.exhaustiveMaxK, "enumerate S_k without pruning up to this size");
  cmd->add_option("--seed", c.seed, "seed for random sampling");
  cmd->add_flag("--json", c.json, "emit JSON");
  cmd->add_flag("--csv", c.csv, "emit CSV");
  cmd->add_option("--tolerance", c.tolerance, "agreement tolerance in standard errors");
}

LoadedGraph loadGraph(const GraphSource& src) {
  const int given = !src.spec.empty() + !src.graphPath.empty() + !src.treePath.empty();
  if (given != 1) throw ParseError("give exactly one of --spec, --graph, --tree");
  LoadedGraph out;
  if (!src.spec.empty()) {
    auto spec = parseSpec(src.spec);
    out.graph = generate(spec);
    out.provenance = "spec: " + formatSpec(spec);
  } else if (!src.graphPath.empty()) {
    const std::string text = readTextFile(src.graphPath);
    auto doc = parseGraphDocument(text);
    out.graph = doc.graph;
    out.provenance = fmt::format("file {} (fnv1a {})", src.graphPath, contentHash(text));
    if (doc.familySpec) out.provenance += ", spec: " + *doc.familySpec;
  } else {
    const std::string text = readTextFile(src.treePath);
    const std::string dir = std::filesystem::path(src.treePath).parent_path().string();
    out.tree = treeCompose(parseTreeScript(text, dir));
    out.graph = out.tree->graph;
    out.provenance = fmt::format("tree {} (fnv1a {})", src.treePath, contentHash(text));
  }
  return out;
}

std::string facesLine(const FaceTable& F, int D) {
  std::string s;
  for (int a = 1; a <= D; ++a)
    for (int b = a + 1; b <= D; ++b) s += fmt::format("{}F{}{}={}", s.empty() ? "" : " ", a, b, F.at(a, b));
  return s;
}

// ---------------------------------------------------------------------------

int cmdInfo(const LoadedGraph& g, const Common& c) {
  const ColoredGraph& G = g.graph;
  const auto deg = degreeReport(G);
  const auto cls = classify(G);
  auto budget = makeBudget(c);
  if (!c.budget && G.k() > 12) budget.nodeLimit = 2'000'000;
  const auto comp = compatibilitySearch(G, budget);
  std::optional<TreeCompatibility> tracked;
  if (g.tree) tracked = trackCompatibility(*g.tree, budget);

  if (c.json) {
    Json j;
    j["provenance"] = g.provenance;
    j["graph"] = graphToJson({G, std::nullopt, std::nullopt});
    j["degrees"] = toJson(deg);
    j["classification"] = toJson(cls);
    j["compatibility"] = toJson(comp);
    if (tracked) {
      Json t;
      t["delta"] = tracked->value.delta;
      t["mu"] = tracked->value.mu;
      t["known"] = tracked->known;
      t["assumed"] = tracked->assumed;
      t["witnessDelta"] = tracked->witness.deltaNu;
      t["witness"] = tracked->witness.nu.toCycleString();
      Json steps = Json::array();
      for (const auto& s : tracked->steps) steps.push_back(s.justification);
      t["steps"] = steps;
      j["composition"] = t;
    }
    fmt::print("{}\n", j.dump(2));
    return 0;
  }
  if (c.csv) {
    fmt::print("quantity,value,exactness\n");
    fmt::print("k,{},EXACT\nkappa,{},EXACT\n", G.k(), deg.kappa);
    for (int a = 1; a <= G.D(); ++a)
      for (int b = a + 1; b <= G.D(); ++b) fmt::print("F{}{},{},EXACT\n", a, b, deg.faces.at(a, b));
    for (const auto& [order, genus] : deg.genus) fmt::print("genus {},{},EXACT\n", jacketKey(order), genus);
    for (const auto& [p, w] : deg.omegaP) fmt::print("omega_{},{},EXACT\n", p, w);
    fmt::print("Delta,{},{}\nmu,{},{}\n", comp.delta, toString(comp.exactness), comp.mu, toString(comp.exactness));
    return 0;
  }
  fmt::print("source      {}\n", g.provenance);
  fmt::print("graph       {}\n", G.toString());
  fmt::print("faces       {}\n", facesLine(deg.faces, G.D()));
  fmt::print("kappa       {} (kappa - k = {})\n", deg.kappa, deg.kappaMinusK);
  std::string genera;
  for (const auto& [order, genus] : deg.genus) genera += fmt::format(" g{}={}", jacketKey(order), genus);
  fmt::print("genera     {}\n", genera);
  std::string omegas;
  for (const auto& [p, w] : deg.omegaP) omegas += fmt::format(" omega_{}={}", p, w);
  fmt::print("degrees    {}\n", omegas);
  std::string ks;
  for (const auto& [B, v] : deg.K)
    if (static_cast<int>(B.size()) == G.D() - 1) ks += fmt::format(" kappa(G|{})={}", colorSetKey(B), v + deg.kappa);
  if (!ks.empty()) fmt::print("restricted {}\n", ks);
  fmt::print("flags       trivial={} cyclic={} D-partite={} melonic={} MST={} double-2-face={}\n", cls.trivial,
             cls.cyclic, cls.genuinelyDPartite, cls.melonic, cls.maximallySingleTrace, cls.hasDoubleSize2FaceVertex);
  if (comp.exactness == Exactness::Exact)
    fmt::print("Delta       {} EXACT (mu = {}, {} nodes{})\n", comp.delta, comp.mu, comp.nodes,
               comp.exhaustive ? ", exhaustive" : "");
  else
    fmt::print("Delta       <= {} BOUND (search stopped after {} nodes; mu not established)\n", comp.delta,
               comp.nodes);
  if (tracked) {
    if (tracked->known)
      fmt::print("composition Delta = {}, mu = {} (established{})\n", tracked->value.delta, tracked->value.mu,
                 tracked->assumed ? ", with declared assumptions" : "");
    else
      fmt::print("composition Delta <= {} BOUND (composition rules do not apply)\n", tracked->value.delta);
    for (std::size_t i = 0; i < tracked->steps.size(); ++i)
      fmt::print("  step {}: {}\n", i + 1, tracked->steps[i].justification);
    fmt::print("  witness nu with Delta_nu = {}\n", tracked->witness.deltaNu);
  }
  return 0;
}

// ---------------------------------------------------------------------------

WeightFunction weightsOf(const StateDocument& s, const BigInt& N) {
  if (auto* a = std::get_if<WeightFunction>(&s)) return *a;
  if (auto* n = std::get_if<NamedState>(&s)) return n->weights(N);
  return canonicalize(std::get<WeightedPartition>(s));
}

int cmdEval(const LoadedGraph& g, const std::string& stateArg, const std::optional<long>& N, bool dense,
            const Common& c) {
  const ColoredGraph& G = g.graph;
  const StateDocument state = parseStateArgument(stateArg, G.D());
  require(stateColors(state) == G.D(), "state and graph have different numbers of colors");
  Json j;
  j["provenance"] = g.provenance;
  j["state"] = stateLabel(state);
  std::vector<std::pair<std::string, std::string>> lines;
  if (auto* named = std::get_if<NamedState>(&state)) {
    auto sv = scaling(G, *named, makeBudget(c));
    j["scaling"] = toString(sv.s);
    j["exactness"] = toString(sv.exactness);
    lines.emplace_back("scaling", fmt::format("s = {} {}", toString(sv.s), toString(sv.exactness)));
  }
  const bool haar = std::holds_alternative<NamedState>(state) && std::get<NamedState>(state).kind == StateKind::Haar;
  if (!haar && (N || !std::holds_alternative<NamedState>(state))) {
    WeightFunction alpha = weightsOf(state, BigInt(N.value_or(1)));
    auto fv = evaluateOnReference(G, alpha);
    j["weights"] = alpha.toString();
    j["factored"] = fv.toString();
    j["exact"] = toString(fv.value());
    lines.emplace_back("weights", alpha.toString());
    lines.emplace_back("factored", fv.toString());
    lines.emplace_back("exact", toString(fv.value()));
    if (dense) {
      auto psi = buildReference(alpha);
      Complex v = contract(G, psi);
      j["dense"] = v.real();
      lines.emplace_back("dense", fmt::format("{:.15g}{:+.3g}i", v.real(), v.imag()));
    }
  }
  if (c.json) {
    fmt::print("{}\n", j.dump(2));
  } else {
    fmt::print("source   {}\nstate    {}\n", g.provenance, stateLabel(state));
    for (const auto& [k, v] : lines) fmt::print("{:<8} {}\n", k, v);
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<FamilySpec> catalog(int D, int kBudget) {
  std::vector<std::pair<int, FamilySpec>> out;
  out.emplace_back(1, spec::Melon{D});
  for (int k = 2; k <= kBudget; ++k) {
    for (const auto& B : subsetsOfSize(D, 1)) out.emplace_back(k, spec::CyclicBipartition{D, k, B});
    for (int size = 2; 2 * size <= D; ++size)
      for (const auto& B : subsetsOfSize(D, size))
        if (B.front() == 1) out.emplace_back(k, spec::CyclicBipartition{D, k, B});
    for (int i = 1; i <= D; ++i)
      for (int j = i + 1; j <= D; ++j) {
        out.emplace_back(k, spec::PT{D, k, {i}, {j}});
        if (k % 2 == 0) out.emplace_back(k, spec::RM{D, k, {i}, {j}});
      }
  }
  if (D <= kBudget) {
    std::vector<int> seq = fullColorSet(D);
    out.emplace_back(D, spec::JRM{D, seq});
    out.emplace_back(D, spec::CompleteGraph{D});
  }
  for (int n = 2;; ++n) {
    long k = 1;
    for (int i = 1; i < D; ++i) k *= n;
    if (k > kBudget) break;
    out.emplace_back(static_cast<int>(k), spec::ME{n, D});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FamilySpec> specs;
  for (auto& [k, s] : out) specs.push_back(std::move(s));
  return specs;
}

int cmdDistinguish(const std::string& aArg, const std::string& bArg, int D, int kBudget, long N, bool flips,
                   const Common& c) {
  const StateDocument A = parseStateArgument(aArg, D);
  const StateDocument B = parseStateArgument(bArg, D);
  require(stateColors(A) == stateColors(B), "the two states have different numbers of colors");
  D = stateColors(A);
  const bool symbolic = std::holds_alternative<NamedState>(A) && std::holds_alternative<NamedState>(B);
  const auto budget = makeBudget(c);
  std::size_t scanned = 0;
  std::vector<std::string> rejected;
  auto test = [&](const ColoredGraph& G, const std::string& label) -> std::optional<std::string> {
    ++scanned;
    if (symbolic) {
      auto sa = scaling(G, std::get<NamedState>(A), budget);
      auto sb = scaling(G, std::get<NamedState>(B), budget);
      if (sa.s != sb.s)
        return fmt::format("witness {}\n  s(A) = {} {}, s(B) = {} {}, s(A) - s(B) = {}", label, toString(sa.s),
                           toString(sa.exactness), toString(sb.s), toString(sb.exactness), toString(sa.s - sb.s));
      if (rejected.size() < 3) rejected.push_back(fmt::format("{} (omega_2 = {})", label, omegaP(G, 2)));
      return std::nullopt;
    }
    auto va = evaluateOnReference(G, weightsOf(A, N)).value();
    auto vb = evaluateOnReference(G, weightsOf(B, N)).value();
    if (va != vb)
      return fmt::format("witness {}\n  Tr(A) = {}, Tr(B) = {}, ratio = {}", label, toString(va), toString(vb),
                         toString(va / vb));
    return std::nullopt;
  };
  const auto specs = catalog(D, kBudget);
  for (const auto& s : specs)
    if (auto hit = test(generate(s), formatSpec(s))) {
      for (const auto& r : rejected) fmt::print("rejected {}\n", r);
      fmt::print("{}\nscanned {} graphs\n", *hit, scanned);
      return 0;
    }
  if (flips) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t j = i; j < specs.size(); ++j) {
        ColoredGraph G1 = generate(specs[i]), G2 = generate(specs[j]);
        if (G1.k() + G2.k() > kBudget) continue;
        for (int col = 1; col <= D; ++col)
          if (auto hit = test(flip(G1, {col, 0}, G2, {col, 0}),
                              fmt::format("[{}] *{} [{}]", formatSpec(specs[i]), col, formatSpec(specs[j])))) {
            fmt::print("{}\nscanned {} graphs\n", *hit, scanned);
            return 0;
          }
      }
  }
  fmt::print("NOT_FOUND after {} graphs with k <= {}\n", scanned, kBudget);
  return 0;
}

// ---------------------------------------------------------------------------

std::string flowText(const Flow& f) {
  std::string s;
  for (const auto& [edge, v] : f)
    if (v != 1) s += fmt::format("  gamma({{{}}}, {{{}}}) = {}\n", colorSetKey(edge.first), colorSetKey(edge.second), v.str());
  return s.empty() ? "  (all edges carry 1)\n" : s;
}

int cmdOrder(const std::string& aArg, const std::string& bArg, int D, const std::string& relation, long N,
             std::size_t moves) {
  const StateDocument A = parseStateArgument(aArg, D);
  const StateDocument B = parseStateArgument(bArg, D);
  const WeightFunction beta = weightsOf(A, N), alpha = weightsOf(B, N);
  fmt::print("A = {}\nB = {}\n", beta.toString(), alpha.toString());
  if (relation == "lu") {
    fmt::print("LU-equivalent: {}\n", luEqual(beta, alpha) ? "true" : "false");
  } else if (relation == "lo") {
    fmt::print("A ->LO B: {}\n", loLessEqual(beta, alpha) ? "true" : "false");
    for (const auto& [S, w] : alpha.entries())
      fmt::print("  {{{}}}: {} divides {}? {}\n", colorSetKey(S), w.str(), beta.at(S).str(),
                 beta.at(S) % w == 0 ? "yes" : "no");
  } else if (relation == "locc") {
    const bool pointAB = loccPointwiseLE(beta, alpha), pointBA = loccPointwiseLE(alpha, beta);
    fmt::print("pointwise order A >= B: {}; B >= A: {}\n", pointAB, pointBA);
    if (pointAB) {
      fmt::print("A ->LOCC B: ESTABLISHED (pointwise)\n");
      return 0;
    }
    if (auto flow = loccFlowOrder(beta, alpha)) {
      fmt::print("A ->LOCC B: ESTABLISHED (flow)\n{}", flowText(*flow));
      return 0;
    }
    auto rep = loccReachableSufficient(beta, alpha, moves);
    fmt::print("A ->LOCC B: {} ({} states explored)\n", toString(rep.verdict), rep.explored);
    for (const auto& m : rep.moves) fmt::print("  {}\n", m);
  } else {
    throw ParseError("--relation must be lu, lo or locc");
  }
  return 0;
}

// ---------------------------------------------------------------------------

int cmdHaar(const LoadedGraph& g, long N, bool exact, std::size_t mc, bool asymptotic, const Common& c) {
  const ColoredGraph& G = g.graph;
  Json j;
  j["provenance"] = g.provenance;
  std::optional<MomentReport> rep;
  if (exact || (!mc && !asymptotic)) {
    rep = haarMomentExact(G, BigInt(N));
    j["exact"] = toJson(*rep);
  }
  std::optional<MonteCarloEstimate> est;
  if (mc) {
    est = monteCarloHaarMoment(G, static_cast<int>(N), mc, c.seed);
    j["monteCarlo"] = {{"mean", est->mean.real()}, {"imag", est->mean.imag()}, {"stdError", est->stdError},
                       {"samples", est->samples}, {"seed", est->seed}};
  }
  std::optional<AsymptoticR> asym;
  if (asymptotic) {
    asym = asymptoticRHaar(G, makeBudget(c));
    j["asymptotic"] = {{"ok", asym->status == AsymptoticStatus::Ok}, {"slope", asym->slope}, {"mu", asym->mu},
                       {"conditions", asym->conditions}};
  }
  double sigmas = 0;
  if (rep && est) {
    sigmas = std::abs(est->mean.real() - rep->exactValue.convert_to<double>()) / std::max(est->stdError, 1e-300);
    j["agreementSigmas"] = sigmas;
  }
  if (c.json) {
    fmt::print("{}\n", j.dump(2));
  } else {
    fmt::print("source   {}\n", g.provenance);
    if (rep)
      fmt::print("exact    {} = {:.12g} (gaussian {}, prefactor {}, s = {}, mu = {})\n", toString(rep->exactValue),
                 rep->exactValue.convert_to<double>(), toString(rep->gaussianValue), toString(rep->prefactor), rep->s,
                 rep->mu);
    if (est)
      fmt::print("mc       {:.8g} +- {:.3g} ({} samples, seed {})\n", est->mean.real(), est->stdError, est->samples,
                 est->seed);
    if (rep && est)
      fmt::print("agree    {} ({:.2f} standard errors, tolerance {})\n", sigmas <= c.tolerance ? "yes" : "NO", sigmas,
                 c.tolerance);
    if (asym) {
      if (asym->status == AsymptoticStatus::Ok)
        fmt::print("<R_G>    ~ {} ln N - ln {}\n", asym->slope, asym->mu);
      else
        fmt::print("<R_G>    conditions not met\n");
      for (const auto& s : asym->conditions) fmt::print("  {}\n", s);
    }
  }
  if (rep && est && sigmas > c.tolerance) return 2;
  return 0;
}

// ---------------------------------------------------------------------------

int cmdTable(const std::vector<int>& ns, const Common& c) {
  const auto states = tableStates();
  std::vector<std::string> header{"row", "n"};
  for (const auto& s : states) header.push_back(s.name());
  if (c.csv) {
    fmt::print("{}\n", fmt::join(header, ","));
  } else {
    fmt::print("{:<26}{:>3}", header[0], header[1]);
    for (std::size_t i = 2; i < header.size(); ++i) fmt::print("{:>11}", header[i]);
    fmt::print("\n");
  }
  for (const auto& row : tableExpectations())
    for (int n : ns) {
      EntropyRow er;
      er.family = row.family;
      er.n = n;
      std::vector<std::string> cells;
      for (const auto& s : states) {
        auto v = entropyScaling(er, s, makeBudget(c));
        cells.push_back(toString(v.value) + (v.conjectural ? "?" : "") +
                        (v.exactness == Exactness::Exact ? "" : "(bound)"));
      }
      if (c.csv)
        fmt::print("{},{},{}\n", row.label, n, fmt::join(cells, ","));
      else {
        fmt::print("{:<26}{:>3}", row.label, n);
        for (const auto& cell : cells) fmt::print("{:>11}", cell);
        fmt::print("\n");
      }
    }
  if (!c.csv) fmt::print("(? marks entries whose Haar value is conjectural)\n");
  return 0;
}

int cmdVerify(const std::vector<std::string>& names, const Common& c) {
  std::vector<std::string> run = names;
  if (run.empty() || (run.size() == 1 && run[0] == "all")) run = suiteNames();
  std::size_t failures = 0;
  for (const auto& name : run) {
    auto rep = runSuite(name, c.seed);
    for (const auto& chk : rep.checks)
      if (!chk.pass || !c.csv) fmt::print("{} [{}] {}{}\n", chk.pass ? "PASS" : "FAIL", rep.suite, chk.name,
                                          chk.detail.empty() ? "" : " (" + chk.detail + ")");
    fmt::print("suite {}: {} checks, {} failed\n", rep.suite, rep.checks.size(), rep.failures());
    failures += rep.failures();
  }
  return failures ? 2 : 0;
}

int cmdThirdColor(const std::string& second, std::optional<int> cycles, std::optional<int> facesWith2, int minDelta,
                  const Common& c) {
  ThirdColorQuery q;
  int k = 0;
  for (std::size_t i = 0; i < second.size();) {
    if (std::isdigit(static_cast<unsigned char>(second[i]))) {
      std::size_t j = i;
      while (j < second.size() && std::isdigit(static_cast<unsigned char>(second[j]))) ++j;
      k = std::max(k, std::stoi(second.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  q.first = Permutation::identity(k);
  q.second = Permutation::parseCycles(k, second);
  q.cyclesOfThird = cycles;
  q.facesWithSecond = facesWith2;
  q.minDelta = minDelta;
  q.budget = makeBudget(c);
  auto rep = searchThirdColor(q);
  fmt::print("enumerated {} candidates, {} admitted\n", rep.enumerated, rep.admitted);
  for (const auto& cls : rep.classes)
    fmt::print("  Delta={} mu={}: {} graphs, e.g. {}\n", cls.delta, cls.mu, cls.count, cls.example.toCycleString());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trinv: trace invariants of multipartite states via colored graphs"};
  app.require_subcommand(1);
  Common common;
  if (const char* env = std::getenv("TRINV_BUDGET")) common.budget = std::strtoull(env, nullptr, 10);

  GraphSource infoSrc, evalSrc, haarSrc;
  auto* info = app.add_subcommand("info", "degrees, classification and compatibility of a graph");
  addGraphSource(info, infoSrc);
  addCommon(info, common);

  auto* eval = app.add_subcommand("eval", "evaluate a graph on a state");
  addGraphSource(eval, evalSrc);
  addCommon(eval, common);
  std::string evalState;
  std::optional<long> evalN;
  bool evalDense = false;
  eval->add_option("--state", evalState, "state label or JSON file")->required();
  eval->add_option("--N", evalN, "local GHZ dimension for named states");
  eval->add_flag("--dense", evalDense, "cross-check by dense contraction");

  auto* dist = app.add_subcommand("distinguish", "find a graph whose value separates two states");
  addCommon(dist, common);
  std::string distA, distB;
  int distD = 0, kBudget = 6;
  long distN = 2;
  bool distFlips = false;
  dist->add_option("--a", distA, "first state")->required();
  dist->add_option("--b", distB, "second state")->required();
  dist->add_option("--colors", distD, "number of colors for state labels");
  dist->add_option("--k-budget", kBudget, "largest graph size scanned");
  dist->add_option("--N", distN, "dimension used when a state is given by weights");
  dist->add_flag("--flips", distFlips, "also scan pairwise flips of catalog graphs");

  auto* order = app.add_subcommand("order", "LU, LO or LOCC order between two reference states");
  addCommon(order, common);
  std::string ordA, ordB, relation = "lo";
  int ordD = 0;
  long ordN = 2;
  std::size_t ordMoves = 2000;
  order->add_option("--a", ordA, "source state")->required();
  order->add_option("--b", ordB, "target state")->required();
  order->add_option("--colors", ordD, "number of colors for state labels");
  order->add_option("--relation", relation, "lu, lo or locc");
  order->add_option("--N", ordN, "local GHZ dimension for named states");
  order->add_option("--moves", ordMoves, "states explored by the LOCC move search");

  auto* haar = app.add_subcommand("haar", "Haar-random moments");
  addGraphSource(haar, haarSrc);
  addCommon(haar, common);
  long haarN = 2;
  bool haarExact = false, haarAsym = false;
  std::size_t haarMc = 0;
  haar->add_option("--N", haarN, "local dimension");
  haar->add_flag("--exact", haarExact, "exact finite-N moment");
  haar->add_option("--mc", haarMc, "Monte Carlo samples");
  haar->add_flag("--asymptotic", haarAsym, "leading large-N behavior of R_G");

  auto* table = app.add_subcommand("table", "normalized entropy scalings on the named tripartite states");
  addCommon(table, common);
  std::vector<int> tableNs{2, 3};
  table->add_option("--n", tableNs, "replica indices")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run a fixture suite");
  addCommon(verify, common);
  std::vector<std::string> suites;
  verify->add_option("suite", suites, "suite names or 'all'");

  auto* third = app.add_subcommand("third-color", "enumerate third colors for two fixed colors (D = 3)");
  addCommon(third, common);
  std::string thirdSecond;
  std::optional<int> thirdCycles, thirdFaces;
  int thirdMinDelta = 0;
  third->add_option("--second", thirdSecond, "second color in cycle notation; the first is the identity")->required();
  third->add_option("--cycles", thirdCycles, "required cycle count of the third color");
  third->add_option("--faces", thirdFaces, "required faces between colors 2 and 3");
  third->add_option("--min-delta", thirdMinDelta, "only tally graphs with at least this Delta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*info) return cmdInfo(loadGraph(infoSrc), common);
    if (*eval) return cmdEval(loadGraph(evalSrc), evalState, evalN, evalDense, common);
    if (*dist) return cmdDistinguish(distA, distB, distD, kBudget, distN, distFlips, common);
    if (*order) return cmdOrder(ordA, ordB, ordD, relation, ordN, ordMoves);
    if (*haar) return cmdHaar(loadGraph(haarSrc), haarN, haarExact, haarMc, haarAsym, common);
    if (*table) return cmdTable(tableNs, common);
    if (*verify) return cmdVerify(suites, common);
    if (*third) return cmdThirdColor(thirdSecond, thirdCycles, thirdFaces, thirdMinDelta, common);
  } catch (const ConsistencyError& e) {
    fmt::print(stderr, "internal consistency failure: {}\n", e.what());
    return 2;
  } catch (const InvalidArgument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
