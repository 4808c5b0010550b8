#include "bookemb/cnf.h"

#include <algorithm>
#include <map>
#include <sstream>

namespace bookemb {

int VarMap::orderVar(uint32_t i, uint32_t j) const {
  // pairs (i,j), i<j, in lexicographic order, 1-based
  uint32_t e = elements();
  return int(1 + uint64_t(i) * (2 * e - i - 1) / 2 + (j - i - 1));
}

int VarMap::beforeLit(uint32_t i, uint32_t j) const {
  return i < j ? orderVar(i, j) : -orderVar(j, i);
}

int VarMap::pageVar(uint32_t edgeIdx, int color) const {
  return int(orderVarCount() + uint64_t(edgeIdx) * uint32_t(k) + uint32_t(color - 1) + 1);
}

void CnfInstance::addClause(std::vector<int> lits) {
  if (lits.empty()) throw Error(ErrorKind::InvalidSpec, "empty clause at construction");
  clauses.push_back(std::move(lits));
}

uint64_t predictedClauseCount(const Graph& graph, int k) {
  uint64_t n = graph.nodeCount();
  uint64_t m = graph.edges().size();
  uint64_t disjoint = 0;
  const auto& es = graph.edges();
  for (size_t i = 0; i < es.size(); i++)
    for (size_t j = i + 1; j < es.size(); j++) {
      const Edge &e = es[i], &f = es[j];
      if (e.u != f.u && e.u != f.v && e.v != f.u && e.v != f.v) disjoint++;
    }
  uint64_t cut = n > 0 ? n - 1 : 0;
  uint64_t trans = n >= 3 ? 2 * n * (n - 1) * (n - 2) / 6 : 0;
  uint64_t pages = m * (1 + uint64_t(k) * (k - 1) / 2);
  return cut + trans + pages + 8 * uint64_t(k) * disjoint;
}

namespace {

struct Encoder {
  const Graph& graph;
  int k;
  const ConstraintSet& cs;
  NodeId cut;
  CnfInstance out;
  std::map<std::array<uint32_t, 3>, int> cycVars;
  std::map<std::pair<uint32_t, std::string>, int> inVars;
  int falseVar = 0;

  Encoder(const Graph& g, int k_, const ConstraintSet& cs_, NodeId cut_)
      : graph(g), k(k_), cs(cs_), cut(cut_) {}

  uint32_t elem(const PointRef& p) const {
    return p.isMarker() ? graph.nodeCount() + p.idx : p.idx;
  }

  std::string elemName(uint32_t e) const {
    if (e < graph.nodeCount()) return "n" + std::to_string(e);
    return "m:" + cs.markers[e - graph.nodeCount()];
  }

  int newVar(const std::string& name) {
    out.vars++;
    out.map.names.push_back(name);
    return int(out.vars);
  }

  // statically false constraint: the instance as a whole is UNSAT
  void contradiction() {
    if (!falseVar) falseVar = newVar("false");
    out.addClause({falseVar});
    out.addClause({-falseVar});
  }

  // aux var <=> elements p,q,r appear in this cyclic order
  int cycVar(uint32_t p, uint32_t q, uint32_t r) {
    auto it = cycVars.find({p, q, r});
    if (it != cycVars.end()) return it->second;
    int o = newVar("cyc(" + elemName(p) + "," + elemName(q) + "," + elemName(r) + ")");
    int x = out.map.beforeLit(p, q), y = out.map.beforeLit(q, r), z = out.map.beforeLit(r, p);
    // o <=> majority(x,y,z)
    out.addClause({-o, x, y});
    out.addClause({-o, x, z});
    out.addClause({-o, y, z});
    out.addClause({o, -x, -y});
    out.addClause({o, -x, -z});
    out.addClause({o, -y, -z});
    cycVars[{p, q, r}] = o;
    return o;
  }

  std::string ivKey(const Interval& iv) const {
    return elemName(elem(iv.a)) + "," + elemName(elem(iv.b)) + "," +
           (iv.mode == ArcMode::ExcludingAnchor ? "x" : "c") + std::to_string(iv.anchor);
  }

  // aux var <=> element x lies strictly inside the designated open arc
  int inVar(uint32_t x, const Interval& iv) {
    std::string key = ivKey(iv);
    auto it = inVars.find({x, key});
    if (it != inVars.end()) return it->second;
    uint32_t ea = elem(iv.a), eb = elem(iv.b);
    int o1 = cycVar(ea, x, eb);
    int o2 = cycVar(ea, iv.anchor, eb);
    int v = newVar("in(" + elemName(x) + ";" + key + ")");
    if (iv.mode == ArcMode::ExcludingAnchor) {
      // v <=> o1 xor o2
      out.addClause({-v, o1, o2});
      out.addClause({-v, -o1, -o2});
      out.addClause({v, o1, -o2});
      out.addClause({v, -o1, o2});
    } else {
      // v <=> o1 == o2
      out.addClause({-v, o1, -o2});
      out.addClause({-v, -o1, o2});
      out.addClause({v, o1, o2});
      out.addClause({v, -o1, -o2});
    }
    inVars[{x, key}] = v;
    return v;
  }

  // membership of node x in iv, resolved statically where possible:
  // returns {-1 never, +1 always, 0 use inVar}; closed flags apply at endpoints
  int staticMembership(NodeId x, const Interval& iv, bool withClosedEndpoints) {
    if (!iv.a.isMarker() && iv.a.idx == x) return withClosedEndpoints && iv.closedA ? 1 : -1;
    if (!iv.b.isMarker() && iv.b.idx == x) return withClosedEndpoints && iv.closedB ? 1 : -1;
    if (iv.anchor == x) return iv.mode == ArcMode::ContainingAnchor ? 1 : -1;
    return 0;
  }

  void base() {
    uint32_t e = out.map.elements();
    for (uint32_t i = 0; i < e; i++)
      if (i != cut) out.addClause({out.map.beforeLit(cut, i)});
    for (uint32_t i = 0; i < e; i++)
      for (uint32_t j = i + 1; j < e; j++)
        for (uint32_t l = j + 1; l < e; l++) {
          int tij = out.map.orderVar(i, j), tjl = out.map.orderVar(j, l), til = out.map.orderVar(i, l);
          out.addClause({-tij, -tjl, til});
          out.addClause({tij, tjl, -til});
        }
    const auto& edges = graph.edges();
    for (uint32_t ei = 0; ei < edges.size(); ei++) {
      std::vector<int> alo;
      for (int c = 1; c <= k; c++) alo.push_back(out.map.pageVar(ei, c));
      out.addClause(alo);
      for (int c1 = 1; c1 <= k; c1++)
        for (int c2 = c1 + 1; c2 <= k; c2++)
          out.addClause({-out.map.pageVar(ei, c1), -out.map.pageVar(ei, c2)});
    }
    // same-page interleaving forbidden for every independent pair
    for (uint32_t i = 0; i < edges.size(); i++)
      for (uint32_t j = i + 1; j < edges.size(); j++) {
        const Edge &e1 = edges[i], &e2 = edges[j];
        if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) continue;
        NodeId a = e1.u, b = e1.v, c = e2.u, d = e2.v;
        const NodeId pats[8][4] = {{a, c, b, d}, {a, d, b, c}, {b, c, a, d}, {b, d, a, c},
                                   {c, a, d, b}, {c, b, d, a}, {d, a, c, b}, {d, b, c, a}};
        for (const auto& p : pats)
          for (int col = 1; col <= k; col++)
            out.addClause({-out.map.beforeLit(p[0], p[1]), -out.map.beforeLit(p[1], p[2]),
                           -out.map.beforeLit(p[2], p[3]), -out.map.pageVar(i, col),
                           -out.map.pageVar(j, col)});
      }
  }

  void translate(const Constraint& c) {
    if (const auto* bc = std::get_if<BeforeC>(&c)) {
      out.addClause({cycVar(bc->anchor, bc->x, bc->y)});
    } else if (const auto* ic = std::get_if<InIntervalC>(&c)) {
      int st = staticMembership(ic->x, ic->iv, ic->inside);
      if (st != 0) {
        bool ok = ic->inside ? st == 1 : st == -1;
        // outside-closed additionally excludes endpoints themselves
        if (!ic->inside && (!ic->iv.a.isMarker() && ic->iv.a.idx == ic->x)) ok = false;
        if (!ic->inside && (!ic->iv.b.isMarker() && ic->iv.b.idx == ic->x)) ok = false;
        if (!ok) contradiction();
        return;
      }
      int v = inVar(ic->x, ic->iv);
      out.addClause({ic->inside ? v : -v});
    } else if (const auto* ec = std::get_if<EdgeColorC>(&c)) {
      auto ei = graph.edgeIndex(ec->u, ec->v);
      if (!ei) throw Error(ErrorKind::UnknownNode, "constraint references missing edge");
      out.addClause({ec->negated ? -out.map.pageVar(*ei, ec->color) : out.map.pageVar(*ei, ec->color)});
    } else if (const auto* cc = std::get_if<CondColorFromC>(&c)) {
      for (uint32_t ei = 0; ei < graph.edges().size(); ei++) {
        const Edge& e = graph.edges()[ei];
        NodeId w;
        if (e.u == cc->source)
          w = e.v;
        else if (e.v == cc->source)
          w = e.u;
        else
          continue;
        int st = staticMembership(w, cc->iv, true);
        if (st == -1) continue;
        if (st == 1)
          out.addClause({out.map.pageVar(ei, cc->color)});
        else
          out.addClause({-inVar(w, cc->iv), out.map.pageVar(ei, cc->color)});
      }
    } else if (const auto* xc = std::get_if<ExitColoredC>(&c)) {
      for (uint32_t ei = 0; ei < graph.edges().size(); ei++) {
        const Edge& e = graph.edges()[ei];
        if (std::count(xc->exempt.begin(), xc->exempt.end(), e.u) ||
            std::count(xc->exempt.begin(), xc->exempt.end(), e.v))
          continue;
        // an interval endpoint is neither strictly inside nor strictly outside
        bool uBound = (!xc->iv.a.isMarker() && xc->iv.a.idx == e.u) ||
                      (!xc->iv.b.isMarker() && xc->iv.b.idx == e.u);
        bool vBound = (!xc->iv.a.isMarker() && xc->iv.a.idx == e.v) ||
                      (!xc->iv.b.isMarker() && xc->iv.b.idx == e.v);
        if (uBound || vBound) continue;
        int su = staticMembership(e.u, xc->iv, false);
        int sv = staticMembership(e.v, xc->iv, false);
        int p = out.map.pageVar(ei, xc->color);
        if (su != 0 && sv != 0) {
          if (su != sv) out.addClause({p});
        } else if (su != 0) {
          out.addClause({su == 1 ? inVar(e.v, xc->iv) : -inVar(e.v, xc->iv), p});
        } else if (sv != 0) {
          out.addClause({sv == 1 ? inVar(e.u, xc->iv) : -inVar(e.u, xc->iv), p});
        } else {
          int iu = inVar(e.u, xc->iv), iv2 = inVar(e.v, xc->iv);
          out.addClause({-iu, iv2, p});
          out.addClause({iu, -iv2, p});
        }
      }
    }
  }

  CnfInstance run() {
    out.map.nodeCount = graph.nodeCount();
    out.map.markerCount = uint32_t(cs.markers.size());
    out.map.edgeCount = uint32_t(graph.edges().size());
    out.map.k = k;
    uint32_t e = out.map.elements();
    for (uint32_t i = 0; i < e; i++)
      for (uint32_t j = i + 1; j < e; j++)
        out.map.names.push_back("ord(" + elemName(i) + "," + elemName(j) + ")");
    for (uint32_t ei = 0; ei < graph.edges().size(); ei++) {
      const Edge& ed = graph.edges()[ei];
      for (int c = 1; c <= k; c++)
        out.map.names.push_back("page(" + std::to_string(ed.u) + "-" + std::to_string(ed.v) + "," +
                                std::to_string(c) + ")");
    }
    out.vars = uint32_t(out.map.names.size());
    base();
    for (const auto& c : cs.items) translate(c);
    return std::move(out);
  }
};

}  // namespace

CnfInstance encode(const Graph& graph, int k, const ConstraintSet& cs, NodeId cut) {
  if (k < 1) throw Error(ErrorKind::InvalidK, "k must be >= 1");
  if (cut >= graph.nodeCount() && graph.nodeCount() > 0)
    throw Error(ErrorKind::UnknownNode, "cut node out of range");
  validateConstraintSet(graph, cs);
  return Encoder(graph, k, cs, cut).run();
}

std::string emitDimacs(const CnfInstance& cnf) {
  std::string s;
  s += "c shape " + std::to_string(cnf.map.nodeCount) + " " + std::to_string(cnf.map.markerCount) + " " +
       std::to_string(cnf.map.edgeCount) + " " + std::to_string(cnf.map.k) + "\n";
  for (size_t i = 0; i < cnf.map.names.size(); i++)
    s += "c map " + cnf.map.names[i] + " " + std::to_string(i + 1) + "\n";
  s += "p cnf " + std::to_string(cnf.vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& cl : cnf.clauses) {
    for (int lit : cl) {
      s += std::to_string(lit);
      s += ' ';
    }
    s += "0\n";
  }
  return s;
}

CnfInstance parseDimacs(const std::string& text) {
  CnfInstance cnf;
  std::istringstream in(text);
  std::string line;
  uint64_t declaredClauses = 0;
  bool sawHeader = false;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    lineNo++;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::istringstream ls(line);
      std::string c, kind;
      ls >> c >> kind;
      if (kind == "shape") {
        ls >> cnf.map.nodeCount >> cnf.map.markerCount >> cnf.map.edgeCount >> cnf.map.k;
      } else if (kind == "map") {
        std::string name;
        size_t idx = 0;
        ls >> name >> idx;
        if (idx == 0) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineNo) + ": bad atom map");
        if (cnf.map.names.size() < idx) cnf.map.names.resize(idx);
        cnf.map.names[idx - 1] = name;
      }
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream ls(line);
      std::string p, fmt;
      ls >> p >> fmt >> cnf.vars >> declaredClauses;
      if (fmt != "cnf") throw Error(ErrorKind::ParseError, "line " + std::to_string(lineNo) + ": bad header");
      sawHeader = true;
      continue;
    }
    if (!sawHeader) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineNo) + ": clause before header");
    std::istringstream ls(line);
    std::vector<int> cl;
    int lit;
    while (ls >> lit) {
      if (lit == 0) break;
      if (uint32_t(std::abs(lit)) > cnf.vars)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineNo) + ": literal out of range");
      cl.push_back(lit);
    }
    cnf.addClause(std::move(cl));
  }
  if (!sawHeader) throw Error(ErrorKind::ParseError, "missing DIMACS header");
  if (cnf.clauses.size() != declaredClauses)
    throw Error(ErrorKind::ParseError, "clause count mismatch: header says " + std::to_string(declaredClauses));
  return cnf;
}

std::vector<int8_t> parseModel(const std::string& text, uint32_t vars) {
  std::vector<int8_t> model(vars, -1);
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "v" || tok == "s" || tok == "SATISFIABLE" || tok == "UNSATISFIABLE") continue;
    int lit = 0;
    try {
      lit = std::stoi(tok);
    } catch (...) {
      throw Error(ErrorKind::ParseError, "bad model token: " + tok);
    }
    if (lit == 0) continue;
    uint32_t v = uint32_t(std::abs(lit));
    if (v > vars) throw Error(ErrorKind::MalformedModel, "model literal out of range: " + tok);
    model[v - 1] = lit > 0 ? 1 : -1;
  }
  return model;
}

BookEmbedding decode(const CnfInstance& cnf, const std::vector<int8_t>& model, const Graph& graph, int k) {
  if (model.size() < cnf.vars) throw Error(ErrorKind::MalformedModel, "model too short");
  const VarMap& vm = cnf.map;
  if (vm.nodeCount != graph.nodeCount() || vm.edgeCount != graph.edges().size() || vm.k != k)
    throw Error(ErrorKind::ShapeMismatch, "instance shape does not match graph/k");
  uint32_t n = vm.nodeCount;
  std::vector<uint32_t> rank(n, 0);
  for (uint32_t i = 0; i < n; i++)
    for (uint32_t j = i + 1; j < n; j++) {
      if (model[uint32_t(vm.orderVar(i, j)) - 1] > 0)
        rank[j]++;
      else
        rank[i]++;
    }
  std::vector<NodeId> order(n);
  std::vector<bool> used(n, false);
  for (uint32_t i = 0; i < n; i++) {
    if (rank[i] >= n || used[rank[i]]) throw Error(ErrorKind::MalformedModel, "order vars not a total order");
    order[rank[i]] = i;
    used[rank[i]] = true;
  }
  BookEmbedding emb;
  emb.k = k;
  emb.layout = n > 0 ? Layout::fromOrder(order) : Layout{};
  emb.pages.page.assign(vm.edgeCount, 0);
  for (uint32_t ei = 0; ei < vm.edgeCount; ei++) {
    int page = 0;
    for (int c = 1; c <= k; c++) {
      if (model[uint32_t(vm.pageVar(ei, c)) - 1] > 0) {
        if (page) throw Error(ErrorKind::MalformedModel, "two pages set on one edge");
        page = c;
      }
    }
    if (!page) throw Error(ErrorKind::MalformedModel, "no page set on an edge");
    emb.pages.page[ei] = page;
  }
  return emb;
}

MarkerPlacement decodeMarkers(const CnfInstance& cnf, const std::vector<int8_t>& model) {
  const VarMap& vm = cnf.map;
  uint32_t n = vm.nodeCount, e = vm.elements();
  std::vector<uint32_t> rank(e, 0);  // rank over all elements
  for (uint32_t i = 0; i < e; i++)
    for (uint32_t j = i + 1; j < e; j++) {
      if (model[uint32_t(vm.orderVar(i, j)) - 1] > 0)
        rank[j]++;
      else
        rank[i]++;
    }
  // node position by rank among nodes only
  std::vector<std::pair<uint32_t, uint32_t>> nodeByRank;  // (rank, node)
  for (uint32_t i = 0; i < n; i++) nodeByRank.push_back({rank[i], i});
  std::sort(nodeByRank.begin(), nodeByRank.end());
  MarkerPlacement mp;
  mp.at.assign(vm.markerCount, {0, 0});
  for (uint32_t m = 0; m < vm.markerCount; m++) {
    uint32_t r = rank[n + m];
    // gap after the last node ranked before this marker (wraps to last gap)
    uint32_t gap = n - 1;
    uint32_t pos = 0;
    for (uint32_t i = 0; i < n; i++) {
      if (nodeByRank[i].first < r)
        pos = i + 1;
      else
        break;
    }
    if (pos > 0) gap = pos - 1;
    uint32_t rk = 0;
    for (uint32_t m2 = 0; m2 < vm.markerCount; m2++) {
      if (m2 == m) continue;
      uint32_t r2 = rank[n + m2];
      uint32_t pos2 = 0;
      for (uint32_t i = 0; i < n; i++) {
        if (nodeByRank[i].first < r2)
          pos2 = i + 1;
        else
          break;
      }
      uint32_t gap2 = pos2 > 0 ? pos2 - 1 : n - 1;
      if (gap2 == gap && r2 < r) rk++;
    }
    mp.at[m] = {gap, rk};
  }
  return mp;
}

namespace {

struct Dpll {
  const CnfInstance& cnf;
  Budget budget;
  std::vector<int8_t> val;
  std::vector<uint32_t> trail;
  std::vector<std::vector<uint32_t>> occPos, occNeg;  // var -> clause indices
  uint64_t decisions = 0;
  bool budgetHit = false;

  explicit Dpll(const CnfInstance& c, const Budget& b) : cnf(c), budget(b) {
    val.assign(cnf.vars, 0);
    occPos.resize(cnf.vars);
    occNeg.resize(cnf.vars);
    for (uint32_t ci = 0; ci < cnf.clauses.size(); ci++)
      for (int lit : cnf.clauses[ci]) {
        uint32_t v = uint32_t(std::abs(lit)) - 1;
        (lit > 0 ? occPos[v] : occNeg[v]).push_back(ci);
      }
  }

  bool litTrue(int lit) const { return val[uint32_t(std::abs(lit)) - 1] == (lit > 0 ? 1 : -1); }
  bool litFalse(int lit) const { return val[uint32_t(std::abs(lit)) - 1] == (lit > 0 ? -1 : 1); }

  void set(int lit) {
    uint32_t v = uint32_t(std::abs(lit)) - 1;
    val[v] = lit > 0 ? 1 : -1;
    trail.push_back(v);
  }

  void undoTo(size_t mark) {
    while (trail.size() > mark) {
      val[trail.back()] = 0;
      trail.pop_back();
    }
  }

  // processes trail from qhead; false on conflict
  bool propagate(size_t qhead) {
    while (qhead < trail.size()) {
      uint32_t v = trail[qhead++];
      const auto& watch = val[v] == 1 ? occNeg[v] : occPos[v];
      for (uint32_t ci : watch) {
        int unassigned = 0;
        int count = 0;
        bool sat = false;
        for (int lit : cnf.clauses[ci]) {
          if (litTrue(lit)) {
            sat = true;
            break;
          }
          if (!litFalse(lit)) {
            unassigned = lit;
            count++;
          }
        }
        if (sat) continue;
        if (count == 0) return false;
        if (count == 1) set(unassigned);
      }
    }
    return true;
  }

  enum class R { Sat, Conflict, Stop };

  R go(size_t qhead) {
    if (!propagate(qhead)) return R::Conflict;
    uint32_t pick = cnf.vars;
    for (uint32_t v = 0; v < cnf.vars; v++)
      if (val[v] == 0) {
        pick = v;
        break;
      }
    if (pick == cnf.vars) return R::Sat;
    decisions++;
    if (budget.maxExpanded && decisions > budget.maxExpanded) {
      budgetHit = true;
      return R::Stop;
    }
    for (int phase : {1, -1}) {
      size_t mark = trail.size();
      set(phase * int(pick + 1));
      R r = go(mark);
      if (r != R::Conflict) return r;
      undoTo(mark);
    }
    return R::Conflict;
  }

  DpllOutcome run() {
    DpllOutcome o;
    for (const auto& cl : cnf.clauses)
      if (cl.empty()) {
        o.kind = SatResult::Unsat;
        return o;
      }
    R r = go(0);
    o.decisions = decisions;
    if (r == R::Sat) {
      o.kind = SatResult::Sat;
      o.model.assign(cnf.vars, -1);
      for (uint32_t v = 0; v < cnf.vars; v++)
        if (val[v] != 0) o.model[v] = val[v];
    } else if (r == R::Conflict) {
      o.kind = SatResult::Unsat;
    } else {
      o.kind = SatResult::Unknown;
    }
    return o;
  }
};

}  // namespace

DpllOutcome dpllSolve(const CnfInstance& cnf, const Budget& budget) {
  return Dpll(cnf, budget).run();
}

}  // namespace bookemb
