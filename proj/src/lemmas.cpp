#include "bookemb/lemmas.h"

#include <random>

#include "bookemb/gadgets.h"
#include "bookemb/io.h"
#include "json.hpp"

namespace bookemb {

namespace {

Interval arcExcluding(PointRef a, PointRef b, NodeId anchor, bool closedA = false, bool closedB = false) {
  return Interval{a, b, ArcMode::ExcludingAnchor, anchor, closedA, closedB};
}

PointRef n(NodeId v) { return PointRef::node(v); }

/// the Lemma 1 setting: a,b share a (1,2)-arc, the centers sit between them,
/// and the terminals color their edges into [a,b] monochromatically
ConstraintSet lemma1Constraints(const Graph& g, bool withCenters) {
  NodeId t1 = g.role("1"), t2 = g.role("2"), a = g.role("a"), b = g.role("b");
  NodeId c1 = g.role("c1"), c2 = g.role("c2");
  ConstraintSet cs;
  cs.items.push_back(
      InIntervalC{b, Interval{n(t1), n(t2), ArcMode::ContainingAnchor, a, false, false}, true});
  if (withCenters) {
    Interval ab = arcExcluding(n(a), n(b), t1);
    cs.items.push_back(InIntervalC{c1, ab, true});
    cs.items.push_back(InIntervalC{c2, ab, true});
  }
  Interval abClosed = arcExcluding(n(a), n(b), t1, true, true);
  cs.items.push_back(CondColorFromC{t1, abClosed, 1});
  cs.items.push_back(CondColorFromC{t2, abClosed, 2});
  return cs;
}

/// the Lemma 2 setting: a marked interval (u,v) avoiding both terminals that
/// contains a,b, excludes the centers from [a,b], colors the terminal edges
/// into it, and forces every exit edge to color 3
ConstraintSet lemma2Constraints(const Graph& g, bool withExit) {
  NodeId t1 = g.role("1"), t2 = g.role("2"), a = g.role("a"), b = g.role("b");
  NodeId c1 = g.role("c1"), c2 = g.role("c2");
  ConstraintSet cs;
  cs.markers = {"u", "v"};
  Interval uv = arcExcluding(PointRef::marker(0), PointRef::marker(1), t1);
  cs.items.push_back(InIntervalC{a, uv, true});
  cs.items.push_back(InIntervalC{b, uv, true});
  cs.items.push_back(InIntervalC{t2, uv, false});
  Interval abClosed = arcExcluding(n(a), n(b), t1, true, true);
  cs.items.push_back(InIntervalC{c1, abClosed, false});
  cs.items.push_back(InIntervalC{c2, abClosed, false});
  cs.items.push_back(CondColorFromC{t1, uv, 1});
  cs.items.push_back(CondColorFromC{t2, uv, 2});
  if (withExit) cs.items.push_back(ExitColoredC{uv, {t1, t2}, 3});
  return cs;
}

/// Lemma 3 hypotheses on Q2+12: the Lemma 2 setting minus the center
/// exclusion (the centers' position is the conclusion under test)
ConstraintSet lemma3Hypotheses(const Graph& g) {
  NodeId t1 = g.role("1"), t2 = g.role("2"), a = g.role("a"), b = g.role("b");
  ConstraintSet cs;
  cs.markers = {"u", "v"};
  Interval uv = arcExcluding(PointRef::marker(0), PointRef::marker(1), t1);
  cs.items.push_back(InIntervalC{a, uv, true});
  cs.items.push_back(InIntervalC{b, uv, true});
  cs.items.push_back(InIntervalC{t2, uv, false});
  cs.items.push_back(CondColorFromC{t1, uv, 1});
  cs.items.push_back(CondColorFromC{t2, uv, 2});
  cs.items.push_back(ExitColoredC{uv, {t1, t2}, 3});
  return cs;
}

Scenario lemma3Scenario(const std::string& name, const std::string& check) {
  Scenario s;
  s.name = name;
  s.graph = buildQ2(2, Q2Variant::Plus12);
  s.cs = lemma3Hypotheses(s.graph);
  const Graph& g = s.graph;
  NodeId t1 = g.role("1"), a = g.role("a"), b = g.role("b");
  NodeId c1 = g.role("c1"), c2 = g.role("c2");
  Interval ab = arcExcluding(n(a), n(b), t1);
  Interval abClosed = arcExcluding(n(a), n(b), t1, true, true);
  if (check == "both_centers_inside") {
    s.cs.items.push_back(InIntervalC{c1, ab, true});
    s.cs.items.push_back(InIntervalC{c2, ab, true});
  } else if (check == "both_centers_outside") {
    s.cs.items.push_back(InIntervalC{c1, abClosed, false});
    s.cs.items.push_back(InIntervalC{c2, abClosed, false});
  } else if (check == "c1_out_d1b_not_in_bv") {
    s.cs.items.push_back(InIntervalC{c1, abClosed, false});
    Interval bv = arcExcluding(n(b), PointRef::marker(1), a);
    s.cs.items.push_back(InIntervalC{g.role("d1b"), bv, false});
  } else {  // edge_c1c2_not_color3
    s.cs.items.push_back(EdgeColorC{c1, c2, 3, true});
  }
  s.expect = Scenario::Expect::None;  // UNSAT claim delegated to external solvers
  s.exportOnly = true;
  return s;
}

}  // namespace

std::vector<std::string> scenarioNames() {
  return {
      "lemma1_plus12",
      "lemma1_plusAB",
      "lemma1_control",
      "lemma2_outside",
      "lemma2_control",
      "lemma3_both_centers_inside",
      "lemma3_both_centers_outside",
      "lemma3_c1_out_d1b_not_in_bv",
      "lemma3_edge_c1c2_not_color3",
      "variant_quad",
  };
}

Scenario makeScenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "lemma1_plus12" || name == "lemma1_plusAB" || name == "lemma1_control") {
    s.graph = buildQ1(name == "lemma1_plusAB" ? Q1Variant::PlusAB : Q1Variant::Plus12);
    s.cs = lemma1Constraints(s.graph, name != "lemma1_control");
    s.expect = name == "lemma1_control" ? Scenario::Expect::None : Scenario::Expect::Unsat;
  } else if (name == "lemma2_outside" || name == "lemma2_control") {
    s.graph = buildQ1();
    s.cs = lemma2Constraints(s.graph, name == "lemma2_outside");
    s.expect = name == "lemma2_outside" ? Scenario::Expect::Unsat : Scenario::Expect::None;
  } else if (name.rfind("lemma3_", 0) == 0) {
    return lemma3Scenario(name, name.substr(7));
  } else if (name == "variant_quad") {
    s.graph = buildQuad(1, 0, QuadVariant::Plus12, Q2Variant::TerminalsEdge);
    const Graph& g = s.graph;
    NodeId t1 = g.role("1"), t2 = g.role("2");
    s.cs.markers = {"u", "v"};
    Interval uv = arcExcluding(PointRef::marker(0), PointRef::marker(1), t1);
    s.cs.items.push_back(InIntervalC{g.role("inner_terminal1"), uv, true});
    s.cs.items.push_back(InIntervalC{g.role("inner_terminal2"), uv, true});
    s.cs.items.push_back(InIntervalC{t2, uv, false});
    s.cs.items.push_back(CondColorFromC{t1, uv, 1});
    s.cs.items.push_back(CondColorFromC{t2, uv, 2});
    s.expect = Scenario::Expect::Sat;
  } else {
    std::string all;
    for (const auto& sn : scenarioNames()) all += " " + sn;
    throw Error(ErrorKind::InvalidSpec, "unknown scenario \"" + name + "\"; available:" + all);
  }
  return s;
}

OutcomeReport runScenario(const Scenario& s, const Budget& budget) {
  OutcomeReport r;
  r.scenario = s.name;
  if (s.exportOnly) {
    r.verdict = "export-only";
    return r;
  }
  Verdict v = decideKPages(s.graph, s.k, s.cs, budget);
  r.nodesExpanded = v.stats.expanded;
  r.wallMs = v.stats.wallMs;
  r.exhausted = v.stats.exhausted;
  r.witness = v.witness;
  switch (v.kind) {
    case Verdict::Kind::Sat: r.verdict = "sat"; break;
    case Verdict::Kind::Unsat: r.verdict = "unsat"; break;
    default: r.verdict = "unknown"; break;
  }
  if (s.expect == Scenario::Expect::Unsat) r.matchedExpectation = r.verdict == "unsat";
  if (s.expect == Scenario::Expect::Sat) r.matchedExpectation = r.verdict == "sat";
  return r;
}

std::string exportScenarioDimacs(const Scenario& s) {
  return emitDimacs(encode(s.graph, s.k, s.cs, 0));
}

OutcomeReport verifyScenarioModel(const Scenario& s, const std::string& modelText) {
  OutcomeReport r;
  r.scenario = s.name;
  CnfInstance cnf = encode(s.graph, s.k, s.cs, 0);
  std::vector<int8_t> model = parseModel(modelText, cnf.vars);
  BookEmbedding emb = decode(cnf, model, s.graph, s.k);
  MarkerPlacement mp = decodeMarkers(cnf, model);
  bool ok = validateEmbedding(s.graph, emb).clean() && checkConstraints(s.graph, emb, s.cs, mp).clean();
  if (ok) {
    r.verdict = "sat";
    r.witness = emb;
    r.matchedExpectation = s.expect != Scenario::Expect::Unsat;
  } else {
    r.verdict = "unknown";
    r.matchedExpectation = false;
  }
  return r;
}

std::string reportJson(const OutcomeReport& r, const Graph& g) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["verdict"] = r.verdict;
  j["nodes_expanded"] = r.nodesExpanded;
  j["wall_ms"] = 0;  // excluded from the canonical report to keep bytes stable
  j["exhausted"] = r.exhausted;
  j["matched_expectation"] = r.matchedExpectation;
  if (r.witness) j["witness"] = nlohmann::json::parse(serializeCertificate(g, *r.witness));
  return j.dump(2) + "\n";
}

uint64_t scenarioHash(const Scenario& s) {
  std::string blob = serializeGraphJson(s.graph) + "\n" + serializeConstraints(s.cs) + "\nk=" +
                     std::to_string(s.k) + "\n";
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : blob) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Prop1Report runProp1Suite(int samples, uint64_t seed) {
  Prop1Report rep;
  std::mt19937_64 rng(seed);
  while (rep.embeddings < samples && rep.attempts < samples * 30) {
    rep.attempts++;
    uint32_t nNodes = 5 + uint32_t(rng() % 5);  // 5..9
    Graph g;
    for (uint32_t i = 0; i < nNodes; i++) g.addNode();
    for (uint32_t u = 0; u < nNodes; u++)
      for (uint32_t v = u + 1; v < nNodes; v++)
        if (rng() % 100 < 45) g.addEdge(u, v);
    // connectivity via BFS
    auto adj = g.adjacency();
    std::vector<bool> vis(nNodes, false);
    std::vector<NodeId> stack{0};
    vis[0] = true;
    uint32_t reached = 1;
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : adj[x])
        if (!vis[y]) {
          vis[y] = true;
          reached++;
          stack.push_back(y);
        }
    }
    if (reached != nNodes || g.edges().empty()) continue;
    Budget b;
    b.maxExpanded = 2000000;
    PagenumberResult pr = pagenumber(g, b);
    if (!pr.pages || !pr.witness) continue;
    rep.embeddings++;
    if (!checkProposition1(g, *pr.witness).clean()) rep.violations++;
  }
  return rep;
}

}  // namespace bookemb
