#pragma once

#include "trinv/haar.hpp"
#include "trinv/oracle.hpp"

#include <json.hpp>

#include <fstream>
#include <variant>

namespace trinv {

using Json = nlohmann::json;

/// Raised for malformed input files; carries the line (or field) that failed.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> splitLines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

/// FNV-1a, printed in reports so a result can be traced to its input file.
inline std::string contentHash(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

// ---------------------------------------------------------------------------
// Graph documents

struct GraphDocument {
  ColoredGraph graph;
  std::optional<std::string> name;
  std::optional<std::string> familySpec;
};

inline Json graphToJson(const GraphDocument& doc) {
  Json j;
  j["D"] = doc.graph.D();
  j["k"] = doc.graph.k();
  Json sigma = Json::array();
  for (const auto& p : doc.graph.sigmas()) sigma.push_back(p.oneBased());
  j["sigma"] = sigma;
  if (doc.name) j["name"] = *doc.name;
  if (doc.familySpec) j["familySpec"] = *doc.familySpec;
  return j;
}

inline GraphDocument graphFromJson(const Json& j) {
  auto field = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw ParseError(std::string("graph document: missing field \"") + key + "\"");
    return j.at(key);
  };
  GraphDocument doc;
  int D = 0, k = 0;
  try {
    D = field("D").get<int>();
    k = field("k").get<int>();
  } catch (const Json::exception&) {
    throw ParseError("graph document: \"D\" and \"k\" must be integers");
  }
  const Json& sigma = field("sigma");
  if (!sigma.is_array() || static_cast<int>(sigma.size()) != D)
    throw ParseError("graph document: \"sigma\" must hold " + std::to_string(D) + " image arrays");
  std::vector<Permutation> perms;
  for (int c = 1; c <= D; ++c) {
    const Json& row = sigma[c - 1];
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      throw ParseError(fmt::format("graph document: color {} must list {} images", c, k));
    std::vector<int> im;
    std::vector<int> seenAt(k + 1, 0);
    for (int i = 1; i <= k; ++i) {
      if (!row[i - 1].is_number_integer())
        throw ParseError(fmt::format("graph document: color {}, index {}: image is not an integer", c, i));
      int y = row[i - 1].get<int>();
      if (y < 1 || y > k)
        throw ParseError(fmt::format("graph document: color {}, index {}: image {} out of range 1..{}", c, i, y, k));
      if (seenAt[y])
        throw ParseError(fmt::format("graph document: color {}, index {}: image {} already used at index {}", c,
                                     i, y, seenAt[y]));
      seenAt[y] = i;
      im.push_back(y);
    }
    perms.push_back(Permutation::fromOneBased(im));
  }
  doc.graph = ColoredGraph(std::move(perms));
  if (j.contains("name")) doc.name = j.at("name").get<std::string>();
  if (j.contains("familySpec")) doc.familySpec = j.at("familySpec").get<std::string>();
  return doc;
}

/// Cycle-notation text: an optional "k = N" line, then one "c: (..)(..)" line per
/// color.  Colors without a line are the identity; fixed points may be omitted.
inline ColoredGraph graphFromCycleText(const std::string& text) {
  std::optional<int> k;
  std::map<int, std::pair<std::size_t, std::string>> rows;
  int maxPoint = 0;
  const auto lines = splitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string line = trim(lines[n]);
    if (line.empty() || line[0] == '#') continue;
    auto where = [&](const std::string& what) { return ParseError(fmt::format("line {}: {}", n + 1, what)); };
    if (line[0] == 'k') {
      std::string rest = trim(std::string_view(line).substr(1));
      if (!rest.empty() && (rest[0] == '=' || rest[0] == ':')) rest = trim(std::string_view(rest).substr(1));
      try {
        k = std::stoi(rest);
      } catch (...) {
        throw where("expected \"k = <vertices>\"");
      }
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw where("expected \"<color>: <cycles>\"");
    int c = 0;
    try {
      c = std::stoi(line.substr(0, colon));
    } catch (...) {
      throw where("color label is not an integer");
    }
    if (c < 1) throw where("colors are numbered from 1");
    if (rows.count(c)) throw where(fmt::format("color {} given twice", c));
    std::string body = line.substr(colon + 1);
    for (std::size_t i = 0; i < body.size();) {
      if (std::isdigit(static_cast<unsigned char>(body[i]))) {
        std::size_t j = i;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
        maxPoint = std::max(maxPoint, std::stoi(body.substr(i, j - i)));
        i = j;
      } else {
        ++i;
      }
    }
    rows[c] = {n + 1, body};
  }
  if (rows.empty()) throw ParseError("graph text: no color lines");
  const int D = rows.rbegin()->first;
  const int size = k.value_or(std::max(maxPoint, 1));
  if (maxPoint > size) throw ParseError(fmt::format("graph text: point {} exceeds k = {}", maxPoint, size));
  std::vector<Permutation> perms;
  for (int c = 1; c <= D; ++c) {
    auto it = rows.find(c);
    if (it == rows.end()) {
      perms.push_back(Permutation::identity(size));
      continue;
    }
    try {
      perms.push_back(Permutation::parseCycles(size, it->second.second));
    } catch (const InvalidArgument& e) {
      throw ParseError(fmt::format("line {} (color {}): {}", it->second.first, c, e.what()));
    }
  }
  return ColoredGraph(std::move(perms));
}

inline std::string graphToCycleText(const ColoredGraph& G) {
  std::string out = fmt::format("k = {}\n", G.k());
  for (int c = 1; c <= G.D(); ++c) out += fmt::format("{}: {}\n", c, G.sigma(c).toCycleString());
  return out;
}

/// Accepts a JSON document, cycle-notation text, or a one-line family spec.
inline GraphDocument parseGraphDocument(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError("empty graph input");
  if (t[0] == '{') {
    Json j;
    try {
      j = Json::parse(t);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("graph JSON: ") + e.what());
    }
    return graphFromJson(j);
  }
  if (std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != 'k') {
    GraphDocument doc;
    auto spec = parseSpec(t);
    doc.graph = generate(spec);
    doc.familySpec = formatSpec(spec);
    return doc;
  }
  GraphDocument doc;
  doc.graph = graphFromCycleText(t);
  return doc;
}

// ---------------------------------------------------------------------------
// Tree scripts
//
//   root <operand>
//   union <operand>
//   flip <color> <left white> <right white> <operand>
//   contract <W|B><index> <W|B><index> <operand>
//   assume <text>                    (attached to the preceding step)
//
// Vertices are 1-based.  An operand is a family spec, "file <path>" or
// "graph <c1 cycles> | <c2 cycles> | ...".

namespace detail {

inline VertexRef parseVertexToken(const std::string& tok) {
  require(tok.size() >= 2 && (tok[0] == 'W' || tok[0] == 'B' || tok[0] == 'w' || tok[0] == 'b'),
          "vertex must look like W3 or B1, got \"" + tok + "\"");
  VertexRef v;
  v.shade = (tok[0] == 'W' || tok[0] == 'w') ? Shade::White : Shade::Black;
  v.index = std::stoi(tok.substr(1)) - 1;
  require(v.index >= 0, "vertices are numbered from 1");
  return v;
}

inline TreeOperand parseOperand(const std::string& text, const std::string& baseDir) {
  std::string t = trim(text);
  if (t.rfind("file ", 0) == 0) {
    std::string path = trim(std::string_view(t).substr(5));
    if (!path.empty() && path[0] != '/' && !baseDir.empty()) path = baseDir + "/" + path;
    return parseGraphDocument(readTextFile(path)).graph;
  }
  if (t.rfind("graph ", 0) == 0) {
    std::string body = t.substr(6), lines;
    int c = 1;
    std::size_t start = 0;
    while (true) {
      auto bar = body.find('|', start);
      lines += fmt::format("{}: {}\n", c++, body.substr(start, bar == std::string::npos ? bar : bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    return graphFromCycleText(lines);
  }
  return parseSpec(t);
}

}  // namespace detail

inline TreeScript parseTreeScript(const std::string& text, const std::string& baseDir = "") {
  TreeScript script;
  bool haveRoot = false;
  const auto lines = splitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string line = trim(lines[n]);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string verb;
    is >> verb;
    auto rest = [&] {
      std::string r;
      std::getline(is, r);
      return trim(r);
    };
    try {
      if (verb == "root") {
        require(!haveRoot, "root given twice");
        script.root = detail::parseOperand(rest(), baseDir);
        haveRoot = true;
        continue;
      }
      require(haveRoot, "the first step must be \"root\"");
      if (verb == "assume") {
        require(!script.steps.empty(), "assume needs a preceding step");
        script.steps.back().assumption = rest();
        continue;
      }
      TreeStep st;
      if (verb == "union") {
        st.op = ComposeOp::Union;
      } else if (verb == "flip") {
        st.op = ComposeOp::Flip;
        int lw = 0, rw = 0;
        require(static_cast<bool>(is >> st.color >> lw >> rw), "flip needs <color> <left white> <right white>");
        require(lw >= 1 && rw >= 1, "vertices are numbered from 1");
        st.leftWhite = lw - 1;
        st.rightWhite = rw - 1;
      } else if (verb == "contract") {
        st.op = ComposeOp::VertexContract;
        std::string a, b;
        require(static_cast<bool>(is >> a >> b), "contract needs two vertices");
        st.leftVertex = detail::parseVertexToken(a);
        st.rightVertex = detail::parseVertexToken(b);
      } else {
        throw InvalidArgument("unknown step \"" + verb + "\" (expected root, union, flip, contract, assume)");
      }
      st.operand = detail::parseOperand(rest(), baseDir);
      script.steps.push_back(std::move(st));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("tree script line {}: {}", n + 1, e.what()));
    } catch (const InvalidArgument& e) {
      throw ParseError(fmt::format("tree script line {}: {}", n + 1, e.what()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(fmt::format("tree script line {}: malformed number ({})", n + 1, e.what()));
    } catch (const std::out_of_range& e) {
      throw ParseError(fmt::format("tree script line {}: number out of range ({})", n + 1, e.what()));
    }
  }
  if (!haveRoot) throw ParseError("tree script has no root");
  return script;
}

// ---------------------------------------------------------------------------
// State documents

using StateDocument = std::variant<WeightFunction, NamedState, WeightedPartition>;

namespace detail {

inline ColorSet parseColorKey(const std::string& key) {
  ColorSet out;
  std::string tok;
  std::istringstream is(key);
  while (std::getline(is, tok, ',')) {
    tok = trim(tok);
    require(!tok.empty(), "empty color in key \"" + key + "\"");
    out.push_back(std::stoi(tok));
  }
  return out;
}

inline BigInt jsonBigInt(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) return BigInt(v.get<std::string>());
  throw ParseError(where + ": expected an integer");
}

}  // namespace detail

inline StateDocument stateFromJson(const Json& j) {
  try {
    if (j.contains("weights")) {
      const int D = j.at("D").get<int>();
      WeightFunction alpha(D);
      for (const auto& [key, value] : j.at("weights").items()) {
        ColorSet B = detail::parseColorKey(key);
        ColorSet sorted = normalizeColorSet(B);
        if (sorted != B || sorted.size() != B.size())
          throw ParseError("weights: key \"" + key + "\" must list distinct colors in increasing order");
        BigInt w = detail::jsonBigInt(value, "weights[\"" + key + "\"]");
        if (w < 2) throw ParseError("weights[\"" + key + "\"]: values must be >= 2");
        alpha.set(B, w);
      }
      return alpha;
    }
    if (j.contains("named")) {
      const std::string tag = j.at("named").get<std::string>();
      const int D = j.at("D").get<int>();
      auto colors = [&](const char* key) { return j.at(key).get<std::vector<int>>(); };
      if (tag == "GHZ" || tag == "ghz") return NamedState::ghz(D);
      if (tag == "GHZ_B" || tag == "ghz_on") return NamedState::ghzOn(D, colors("B"));
      if (tag == "GHZ_I" || tag == "ghz_fraction") return NamedState::ghzFraction(D, j.at("I").get<int>());
      if (tag == "Phi_tau" || tag == "cyclic") return NamedState::cyclic(D, colors("tau"));
      if (tag == "phi_p" || tag == "p_complete") return NamedState::pComplete(D, j.at("p").get<int>());
      if (tag == "star") return NamedState::star(D, j.at("c").get<int>());
      if (tag == "star_set") return NamedState::starSet(D, colors("B"));
      if (tag == "haar" || tag == "Haar") return NamedState::haar(D);
      throw ParseError("named state \"" + tag +
                       "\" unknown (GHZ, GHZ_B, GHZ_I, Phi_tau, phi_p, star, star_set, haar)");
    }
    if (j.contains("blocks")) {
      WeightedPartition pi;
      pi.D = j.at("D").get<int>();
      std::size_t index = 0;
      for (const auto& b : j.at("blocks")) {
        ++index;
        WeightedBlock block;
        for (const auto& m : b.at("members")) {
          if (!m.is_array() || m.size() != 2)
            throw ParseError(fmt::format("blocks[{}]: members are [color, copy] pairs", index));
          block.members.push_back({m[0].get<int>(), m[1].get<int>()});
        }
        block.weight = detail::jsonBigInt(b.at("w"), fmt::format("blocks[{}].w", index));
        pi.blocks.push_back(std::move(block));
      }
      validatePartition(pi);
      return pi;
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("state document: ") + e.what());
  }
  throw ParseError("state document needs \"weights\", \"named\" or \"blocks\"");
}

inline Json stateToJson(const StateDocument& doc) {
  Json j;
  if (auto* a = std::get_if<WeightFunction>(&doc)) {
    j["D"] = a->D();
    Json w = Json::object();
    for (const auto& [B, v] : a->entries()) {
      if (v <= std::numeric_limits<std::int64_t>::max())
        w[colorSetKey(B)] = v.convert_to<std::int64_t>();
      else
        w[colorSetKey(B)] = v.str();
    }
    j["weights"] = w;
  } else if (auto* s = std::get_if<NamedState>(&doc)) {
    j["D"] = s->D;
    switch (s->kind) {
      case StateKind::GHZ: j["named"] = "GHZ"; break;
      case StateKind::GHZRestricted: j["named"] = "GHZ_B"; j["B"] = s->B; break;
      case StateKind::GHZFraction: j["named"] = "GHZ_I"; j["I"] = s->I; break;
      case StateKind::Cyclic: j["named"] = "Phi_tau"; j["tau"] = s->tau; break;
      case StateKind::PComplete: j["named"] = "phi_p"; j["p"] = s->p; break;
      case StateKind::CStar: j["named"] = "star"; j["c"] = s->c; break;
      case StateKind::StarSet: j["named"] = "star_set"; j["B"] = s->B; break;
      case StateKind::Haar: j["named"] = "haar"; break;
    }
  } else {
    const auto& pi = std::get<WeightedPartition>(doc);
    j["D"] = pi.D;
    Json blocks = Json::array();
    for (const auto& b : pi.blocks) {
      Json members = Json::array();
      for (const auto& m : b.members) members.push_back({m.color, m.copy});
      blocks.push_back({{"members", members}, {"w", b.weight.convert_to<std::int64_t>()}});
    }
    j["blocks"] = blocks;
  }
  return j;
}

/// A state argument is a JSON file path, inline JSON, or a short label such as
/// "GHZ", "phi2", "Phi:2,3,1", "star:1", "haar".
inline StateDocument parseStateArgument(const std::string& arg, int D) {
  const std::string t = trim(arg);
  if (!t.empty() && t[0] == '{') {
    try {
      return stateFromJson(Json::parse(t));
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("state JSON: ") + e.what());
    }
  }
  if (t.size() > 5 && t.substr(t.size() - 5) == ".json") {
    try {
      return stateFromJson(Json::parse(readTextFile(t)));
    } catch (const Json::parse_error& e) {
      throw ParseError(t + ": " + e.what());
    }
  }
  require(D >= 2, "a state label needs the number of colors (pass --colors)");
  auto after = [&](std::size_t n) { return t.substr(n); };
  auto intList = [](const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };
  if (t == "GHZ" || t == "ghz") return NamedState::ghz(D);
  if (t == "haar" || t == "Haar") return NamedState::haar(D);
  if (t.rfind("GHZ|", 0) == 0) return NamedState::ghzOn(D, intList(after(4)));
  if (t.rfind("GHZ^", 0) == 0) return NamedState::ghzFraction(D, std::stoi(after(4)));
  if (t.rfind("Phi:", 0) == 0) return NamedState::cyclic(D, intList(after(4)));
  if (t.rfind("phi", 0) == 0) return NamedState::pComplete(D, std::stoi(after(3)));
  if (t.rfind("star:", 0) == 0) return NamedState::star(D, std::stoi(after(5)));
  if (t.rfind("stars:", 0) == 0) return NamedState::starSet(D, intList(after(6)));
  throw ParseError("unknown state \"" + t + "\" (GHZ, GHZ|1,2, GHZ^I, Phi:<tau>, phi<p>, star:<c>, stars:<B>, haar, or JSON)");
}

inline std::string stateLabel(const StateDocument& doc) {
  if (auto* a = std::get_if<WeightFunction>(&doc)) return "alpha" + a->toString();
  if (auto* s = std::get_if<NamedState>(&doc)) return s->name();
  return "partition" + canonicalize(std::get<WeightedPartition>(doc)).toString();
}

inline int stateColors(const StateDocument& doc) {
  if (auto* a = std::get_if<WeightFunction>(&doc)) return a->D();
  if (auto* s = std::get_if<NamedState>(&doc)) return s->D;
  return std::get<WeightedPartition>(doc).D;
}

// ---------------------------------------------------------------------------
// Report fragments

inline Json toJson(const Classification& c) {
  Json j;
  j["trivial"] = c.trivial;
  j["cyclic"] = c.cyclic;
  j["genuinelyDPartite"] = c.genuinelyDPartite;
  j["numDistinctColors"] = c.numDistinctColors;
  j["melonic"] = c.melonic;
  j["cMelonicColors"] = c.cMelonicColors;
  j["BMelonicMaximalSets"] = c.bMelonicMaximalSets;
  j["maximallySingleTrace"] = c.maximallySingleTrace;
  j["hasDoubleSize2FaceVertex"] = c.hasDoubleSize2FaceVertex;
  return j;
}

inline std::string jacketKey(const std::vector<int>& order) {
  std::string s = "(";
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
  return s + ")";
}

inline Json toJson(const DegreeReport& r) {
  Json j;
  j["D"] = r.D;
  j["k"] = r.k;
  j["kappa"] = r.kappa;
  j["kappaMinusK"] = r.kappaMinusK;
  Json faces = Json::object();
  for (int a = 1; a <= r.D; ++a)
    for (int b = a + 1; b <= r.D; ++b) faces[fmt::format("{}{}", a, b)] = r.faces.at(a, b);
  j["faces"] = faces;
  Json K = Json::object();
  for (const auto& [B, v] : r.K) K[colorSetKey(B)] = v;
  j["K_B"] = K;
  Json genus = Json::object();
  for (const auto& [order, g] : r.genus) genus[jacketKey(order)] = g;
  j["genusPerJacket"] = genus;
  j["gurauDegree"] = r.gurauDegree;
  Json omega = Json::object();
  for (const auto& [p, v] : r.omegaP) omega[std::to_string(p)] = v;
  j["omegaP"] = omega;
  Json omegaPQ = Json::object();
  for (const auto& [pq, v] : r.omegaPQ) omegaPQ[fmt::format("{},{}", pq.first, pq.second)] = v;
  j["omegaPQ"] = omegaPQ;
  Json Omega = Json::object();
  for (const auto& [c, v] : r.OmegaC) Omega[std::to_string(c)] = v;
  j["OmegaC"] = Omega;
  Json kp = Json::object();
  for (const auto& [p, v] : r.kappaP) kp[std::to_string(p)] = v;
  j["kappaP"] = kp;
  return j;
}

inline Json toJson(const CompatibilityResult& r, std::size_t maxWitnesses = 16) {
  Json j;
  j["delta"] = r.delta;
  j["mu"] = r.mu;
  j["exactness"] = toString(r.exactness);
  j["minTotalDistance"] = r.minTotalDistance;
  j["nodes"] = r.nodes;
  j["exhaustive"] = r.exhaustive;
  Json w = Json::array();
  for (std::size_t i = 0; i < r.witnesses.size() && i < maxWitnesses; ++i)
    w.push_back(r.witnesses[i].nu.toCycleString());
  j["witnesses"] = w;
  return j;
}

inline Json toJson(const MomentReport& r) {
  return Json{{"exact", toString(r.exactValue)},
              {"exactDecimal", r.exactValue.convert_to<double>()},
              {"gaussian", toString(r.gaussianValue)},
              {"prefactor", toString(r.prefactor)},
              {"s", r.s},
              {"mu", r.mu},
              {"exactness", toString(r.exactness)}};
}

}  // namespace trinv
