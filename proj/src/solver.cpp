#include "bookemb/solver.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>

namespace bookemb {

namespace {

using Clock = std::chrono::steady_clock;

// Search elements are nodes (0..n-1) plus markers (n..n+m-1); markers are
// placed on the circle like nodes so their constraints prune early, and the
// final gap/rank placement is read back off the arrangement at the leaf.
struct Search {
  const Graph& graph;
  int k;
  const ConstraintSet& cs;
  Budget budget;
  SolveOptions opts;

  uint32_t n;
  uint32_t m;  // markers
  uint32_t E;  // elements = n + m
  std::vector<std::vector<NodeId>> adj;
  std::vector<Constraint> propItems;  // cs.items + derived (propagation only)
  ConstraintSet propSet;              // same items wrapped for propagate()
  bool useFirstEdgeFix = false;
  bool useReflectionBreak = false;

  std::vector<uint32_t> seq;    // circular arrangement of elements, seq[0] == 0 always
  std::vector<int> nodePos;     // -1 unplaced
  std::vector<int> markerPos;   // -1 unplaced, same position scale as nodePos
  std::vector<int> edgeColor;   // 0 uncolored
  uint32_t coloredCount = 0;

  SolveStats stats;
  Clock::time_point start;
  bool stopped = false;       // any stop (budget or goal reached)
  bool budgetHit = false;

  // enumeration mode
  bool enumerating = false;
  size_t cap = 0;
  std::set<std::pair<std::vector<NodeId>, std::vector<int>>> seen;
  std::vector<BookEmbedding> models;

  // decision mode
  std::optional<BookEmbedding> witness;
  std::optional<MarkerPlacement> witnessMarkers;

  Search(const Graph& g, int k_, const ConstraintSet& cs_, const Budget& b, const SolveOptions& o)
      : graph(g), k(k_), cs(cs_), budget(b), opts(o) {
    n = graph.nodeCount();
    m = uint32_t(cs.markers.size());
    E = n + m;
    adj = graph.adjacency();
    propItems = cs.items;
    if (opts.propagation) {
      auto derived = deriveForPropagation(cs);
      propItems.insert(propItems.end(), derived.begin(), derived.end());
    }
    propSet.markers = cs.markers;
    propSet.items = propItems;
    useFirstEdgeFix = opts.symmetryBreaking && opts.fixFirstEdgeColor && !cs.hasColorConstraints();
    useReflectionBreak = opts.symmetryBreaking && !cs.reflectionSensitive();
    nodePos.assign(n, -1);
    markerPos.assign(m, -1);
    edgeColor.assign(graph.edges().size(), 0);
  }

  PartialState state() const {
    return PartialState{&graph, &nodePos, &edgeColor, k, m ? &markerPos : nullptr};
  }

  void setPos(uint32_t e, int p) {
    if (e < n)
      nodePos[e] = p;
    else
      markerPos[e - n] = p;
  }

  bool overBudget() {
    if (budget.maxExpanded && stats.expanded >= budget.maxExpanded) return true;
    if (budget.wallSeconds > 0 && (stats.expanded & 1023) == 0) {
      double secs = std::chrono::duration<double>(Clock::now() - start).count();
      if (secs >= budget.wallSeconds) return true;
    }
    return false;
  }

  void run() {
    start = Clock::now();
    if (n == 0) {
      // no circle to place markers on; constrained markers are unplaceable
      if (m == 0) foundLeaf();
      stats.exhausted = !budgetHit;
      finish();
      return;
    }
    seq.clear();
    seq.push_back(0);
    nodePos[0] = 0;
    place();
    stats.exhausted = !budgetHit && !(enumerating && models.size() >= cap);
    finish();
  }

  void finish() { stats.wallMs = std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }

  uint32_t pickNext() const {
    // markers first: with one node down every marker constraint starts
    // pruning both node placements and colorings
    for (uint32_t j = 0; j < m; j++)
      if (markerPos[j] < 0) return n + j;
    NodeId best = n;
    int bestPlaced = -1, bestDeg = -1;
    for (NodeId v = 0; v < n; v++) {
      if (nodePos[v] >= 0) continue;
      int placedNbrs = 0;
      for (NodeId w : adj[v])
        if (nodePos[w] >= 0) placedNbrs++;
      int deg = int(adj[v].size());
      if (placedNbrs > bestPlaced || (placedNbrs == bestPlaced && deg > bestDeg)) {
        best = v;
        bestPlaced = placedNbrs;
        bestDeg = deg;
      }
    }
    return best;
  }

  void place() {
    if (stopped) return;
    if (seq.size() == E) {
      leaf();
      return;
    }
    uint32_t x = pickNext();
    // insertion gaps: after each current position; placing the third element
    // into only one of its two gaps fixes the reflection class
    size_t gaps = seq.size();
    if (useReflectionBreak && seq.size() == 2) gaps = 1;
    std::vector<uint32_t> pending;  // edge indices from x to placed neighbors
    if (x < n) {
      for (NodeId w : adj[x])
        if (nodePos[w] >= 0) pending.push_back(*graph.edgeIndex(x, w));
    }
    for (size_t g = 0; g < gaps && !stopped; g++) {
      seq.insert(seq.begin() + long(g) + 1, x);
      for (size_t i = g + 1; i < seq.size(); i++) setPos(seq[i], int(i));
      stats.expanded++;
      if (overBudget()) {
        stopped = true;
        budgetHit = true;
      } else if (placementOk()) {
        colorPending(pending, 0);
      }
      seq.erase(seq.begin() + long(g) + 1);
      setPos(x, -1);
      for (size_t i = g + 1; i < seq.size(); i++) setPos(seq[i], int(i));
    }
  }

  bool prop1Violated() const;

  bool placementOk() {
    if (opts.propagation && !propItems.empty()) {
      if (propagate(state(), propSet) == PropagateResult::Pruned) return false;
    }
    if (opts.prop1Pruning && k >= 3) {
      if (prop1Violated()) return false;
    }
    return true;
  }

  // positions here are relative ranks within the current arrangement
  bool cycPlaced(NodeId a, NodeId b, NodeId c) const {
    int pa = nodePos[a], pb = nodePos[b], pc = nodePos[c];
    if (pa < pc) return pa < pb && pb < pc;
    return pb > pa || pb < pc;
  }

  bool crossesPlaced(const Edge& e, const Edge& f) const {
    if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) return false;
    return cycPlaced(e.u, f.u, e.v) != cycPlaced(e.u, f.v, e.v);
  }

  void colorPending(const std::vector<uint32_t>& pending, size_t i) {
    if (stopped) return;
    if (i == pending.size()) {
      place();
      return;
    }
    uint32_t ei = pending[i];
    const Edge& e = graph.edges()[ei];
    uint32_t mask = k >= 31 ? ~0u : ((1u << k) - 1);
    if (useFirstEdgeFix && coloredCount == 0) mask = 1;
    if (opts.propagation) mask &= allowedPageMask(ei, state(), propItems, k);
    const auto& edges = graph.edges();
    for (int c = 1; c <= k && !stopped; c++) {
      if (!(mask & (1u << (c - 1)))) continue;
      bool clash = false;
      for (size_t j = 0; j < edges.size(); j++) {
        if (edgeColor[j] == c && crossesPlaced(e, edges[j])) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      edgeColor[ei] = c;
      coloredCount++;
      colorPending(pending, i + 1);
      edgeColor[ei] = 0;
      coloredCount--;
    }
  }

  void leaf() {
    if (m == 0) {
      foundLeaf();
      return;
    }
    // read gap/rank placements off the complete arrangement: a marker sits in
    // the gap after the nearest preceding node (seq[0] is always node 0)
    MarkerPlacement placement;
    placement.at.assign(m, {0, 0});
    uint32_t gap = 0, rank = 0, nodesSeen = 0;
    for (uint32_t e : seq) {
      if (e < n) {
        gap = nodesSeen++;
        rank = 0;
      } else {
        placement.at[e - n] = {gap, rank++};
      }
    }
    foundLeaf(&placement);
  }

  void foundLeaf(const MarkerPlacement* placement = nullptr) {
    BookEmbedding emb;
    std::vector<NodeId> order;
    order.reserve(n);
    for (uint32_t e : seq)
      if (e < n) order.push_back(e);
    emb.layout = n == 0 ? Layout{} : Layout::fromOrder(order);
    emb.pages.page = edgeColor;
    emb.k = k;
    MarkerPlacement mp = placement ? *placement : MarkerPlacement{};
    // the leaf check is authoritative; propagation is only a prefilter
    if (!cs.items.empty()) {
      if (!checkConstraints(graph, emb, cs, mp).clean()) return;
    }
    if (enumerating) {
      BookEmbedding canon = canonicalize(emb);
      auto key = std::make_pair(canon.layout.order, canon.pages.page);
      if (seen.insert(key).second) {
        models.push_back(canon);
        if (models.size() >= cap) stopped = true;
      }
      return;
    }
    witness = emb;
    witnessMarkers = mp;
    stopped = true;
  }
};

// Restricted separation check from three monochromatic paths: if placed
// nodes a,b are joined by placed paths of colors 1..3, every component of
// the graph minus those paths must keep its placed nodes on one side of
// (a,b).
bool Search::prop1Violated() const {
  const Search& s = *this;
  uint32_t n = s.n;
  const auto& edges = s.graph.edges();
  std::vector<NodeId> placed;
  for (NodeId v = 0; v < n; v++)
    if (s.nodePos[v] >= 0) placed.push_back(v);
  if (placed.size() < 4) return false;
  // adjacency over placed, colored edges, per color
  for (size_t ia = 0; ia < placed.size(); ia++) {
    for (size_t ib = ia + 1; ib < placed.size(); ib++) {
      NodeId a = placed[ia], b = placed[ib];
      std::vector<bool> onPaths(n, false);
      bool all3 = true;
      for (int c = 1; c <= 3 && all3; c++) {
        // BFS over placed nodes using edges of color c
        std::vector<int64_t> parent(n, -2);
        std::deque<NodeId> q{a};
        parent[a] = -1;
        while (!q.empty()) {
          NodeId x = q.front();
          q.pop_front();
          if (x == b) break;
          for (size_t j = 0; j < edges.size(); j++) {
            if (s.edgeColor[j] != c) continue;
            NodeId y;
            if (edges[j].u == x)
              y = edges[j].v;
            else if (edges[j].v == x)
              y = edges[j].u;
            else
              continue;
            if (s.nodePos[y] < 0 || parent[y] != -2) continue;
            parent[y] = x;
            q.push_back(y);
          }
        }
        if (parent[b] == -2) {
          all3 = false;
        } else {
          for (int64_t x = b; x != -1; x = parent[x]) onPaths[NodeId(x)] = true;
        }
      }
      if (!all3) continue;
      // components of the full graph minus path nodes
      std::vector<int> comp(n, -1);
      int nc = 0;
      auto adjAll = s.adj;
      for (NodeId v = 0; v < n; v++) {
        if (onPaths[v] || comp[v] >= 0) continue;
        std::deque<NodeId> q{v};
        comp[v] = nc;
        while (!q.empty()) {
          NodeId x = q.front();
          q.pop_front();
          for (NodeId y : adjAll[x])
            if (!onPaths[y] && comp[y] < 0) {
              comp[y] = nc;
              q.push_back(y);
            }
        }
        nc++;
      }
      std::vector<int> side(nc, -1);
      for (NodeId v : placed) {
        if (onPaths[v] || comp[v] < 0) continue;
        int sd = s.cycPlaced(a, v, b) ? 1 : 0;
        if (side[comp[v]] == -1)
          side[comp[v]] = sd;
        else if (side[comp[v]] != sd)
          return true;
      }
    }
  }
  return false;
}

}  // namespace

Verdict decideKPages(const Graph& graph, int k, const ConstraintSet& cs, const Budget& budget,
                     const SolveOptions& opts) {
  if (k < 1) throw Error(ErrorKind::InvalidK, "k must be >= 1");
  validateConstraintSet(graph, cs);
  Search s(graph, k, cs, budget, opts);
  s.run();
  Verdict v;
  v.stats = s.stats;
  if (s.witness) {
    v.kind = Verdict::Kind::Sat;
    v.witness = s.witness;
    // witness soundness asserted before returning
    if (!validateEmbedding(graph, *s.witness).clean() ||
        !checkConstraints(graph, *s.witness, cs, *s.witnessMarkers).clean())
      throw Error(ErrorKind::ShapeMismatch, "internal error: SAT witness failed verification");
  } else if (s.stats.exhausted) {
    v.kind = Verdict::Kind::Unsat;
  } else {
    v.kind = Verdict::Kind::Unknown;
  }
  return v;
}

PagenumberResult pagenumber(const Graph& graph, const Budget& budget, const SolveOptions& opts) {
  PagenumberResult res;
  int upper = std::max<int>(1, int((graph.nodeCount() + 1) / 2));
  for (int k = 1; k <= upper; k++) {
    Verdict v = decideKPages(graph, k, ConstraintSet{}, budget, opts);
    res.stats.expanded += v.stats.expanded;
    res.stats.wallMs += v.stats.wallMs;
    if (v.kind == Verdict::Kind::Sat) {
      res.pages = k;
      res.witness = v.witness;
      res.stats.exhausted = true;
      return res;
    }
    if (v.kind == Verdict::Kind::Unknown) return res;  // budget ran out
  }
  return res;
}

std::vector<BookEmbedding> enumerateModels(const Graph& graph, int k, const ConstraintSet& cs,
                                           const Budget& budget, size_t cap, const SolveOptions& opts,
                                           SolveStats* statsOut) {
  if (cap < 1) throw Error(ErrorKind::InvalidSpec, "cap must be >= 1");
  validateConstraintSet(graph, cs);
  SolveOptions o = opts;
  o.fixFirstEdgeColor = false;  // page names matter for model identity
  Search s(graph, k, cs, budget, o);
  s.enumerating = true;
  s.cap = cap;
  s.run();
  if (statsOut) *statsOut = s.stats;
  return s.models;
}

}  // namespace bookemb
