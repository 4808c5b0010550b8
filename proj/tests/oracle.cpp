#include "oracle.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using namespace bookemb;

namespace {

// strict interleaving of endpoints around the circle, by raw positions
bool crosses(const std::vector<uint32_t>& pos, const Edge& e, const Edge& f, uint32_t n) {
  if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) return false;
  uint32_t rv = (pos[e.v] + n - pos[e.u]) % n;
  uint32_t rc = (pos[f.u] + n - pos[e.u]) % n;
  uint32_t rd = (pos[f.v] + n - pos[e.u]) % n;
  return (rc < rv) != (rd < rv);
}

// local reimplementation of the circle-point arithmetic so the enumeration
// does not depend on the engine's propagation machinery; nodes sit at
// (position, 0), marker m between slots at (gap, rank+1)
using Key = std::pair<uint32_t, uint32_t>;

struct Arrangement {
  const std::vector<uint32_t>* pos = nullptr;
  const MarkerPlacement* mp = nullptr;

  Key key(const PointRef& p) const {
    if (p.isMarker()) {
      auto [gap, rank] = mp->at[p.idx];
      return {gap, rank + 1};
    }
    return {(*pos)[p.idx], 0};
  }

  // b strictly inside the arc a -> c in increasing-key direction
  bool cyc(Key a, Key b, Key c) const {
    if (a < c) return a < b && b < c;
    return b > a || b < c;
  }

  bool member(NodeId x, const Interval& iv, bool closedA, bool closedB) const {
    if (!iv.a.isMarker() && iv.a.idx == x) return closedA;
    if (!iv.b.isMarker() && iv.b.idx == x) return closedB;
    Key ka = key(iv.a), kb = key(iv.b);
    bool inPlus = cyc(ka, key(PointRef::node(x)), kb);
    bool anchorPlus = cyc(ka, key(PointRef::node(iv.anchor)), kb);
    if (iv.mode == ArcMode::ExcludingAnchor) return inPlus != anchorPlus;
    return inPlus == anchorPlus;
  }
};

struct Enumerator {
  const Graph& g;
  int k;
  const ConstraintSet& cs;
  // returns true to stop the enumeration
  std::function<bool(const BookEmbedding&, const MarkerPlacement&)> yield;

  uint32_t n;
  std::vector<NodeId> order;
  std::vector<uint32_t> pos;
  std::vector<int> page;
  std::vector<uint32_t> allowed;  // per-edge color bitmask under the placement
  MarkerPlacement mp;

  Enumerator(const Graph& g_, int k_, const ConstraintSet& cs_) : g(g_), k(k_), cs(cs_) {
    n = g.nodeCount();
    page.assign(g.edges().size(), 0);
    allowed.assign(g.edges().size(), 0);
  }

  bool run() {
    if (n == 0) {
      if (cs.hasMarkers()) return false;  // nowhere to place a marker
      mp = MarkerPlacement{};
      resetAllowed();
      return orderOk() && restrictColors() && color(0);
    }
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    pos.resize(n);
    // node 0 stays first; all rotations/reflections are otherwise covered
    std::vector<NodeId> rest(order.begin() + 1, order.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::copy(rest.begin(), rest.end(), order.begin() + 1);
      for (uint32_t i = 0; i < n; i++) pos[order[i]] = i;
      if (placements(0, std::vector<std::vector<uint32_t>>(n))) return true;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return false;
  }

  // enumerate marker placements for the fixed arrangement, then colorings
  bool placements(size_t m, std::vector<std::vector<uint32_t>> perGap) {
    if (m == cs.markers.size()) {
      mp.at.resize(cs.markers.size());
      for (uint32_t gp = 0; gp < uint32_t(perGap.size()); gp++)
        for (size_t r = 0; r < perGap[gp].size(); r++) mp.at[perGap[gp][r]] = {gp, uint32_t(r)};
      if (!orderOk()) return false;
      resetAllowed();
      if (!restrictColors()) return false;
      return color(0);
    }
    for (uint32_t gp = 0; gp < n; gp++) {
      auto& list = perGap[gp];
      for (size_t r = 0; r <= list.size(); r++) {
        list.insert(list.begin() + long(r), uint32_t(m));
        if (placements(m + 1, perGap)) return true;
        list.erase(list.begin() + long(r));
      }
    }
    return false;
  }

  // order-only constraints decided by the arrangement alone
  bool orderOk() const {
    Arrangement ar{&pos, &mp};
    for (const auto& c : cs.items) {
      if (const auto* bc = std::get_if<BeforeC>(&c)) {
        if (!ar.cyc(ar.key(PointRef::node(bc->anchor)), ar.key(PointRef::node(bc->x)),
                    ar.key(PointRef::node(bc->y))))
          return false;
      } else if (const auto* ic = std::get_if<InIntervalC>(&c)) {
        bool in = ic->inside ? ar.member(ic->x, ic->iv, false, false)
                             : !ar.member(ic->x, ic->iv, true, true);
        if (!in) return false;
      }
    }
    return true;
  }

  void resetAllowed() {
    uint32_t full = k >= 31 ? ~0u : ((1u << k) - 1);
    std::fill(allowed.begin(), allowed.end(), full);
  }

  // colors forced on individual edges by the placement; pure precomputation,
  // the leaf still goes through the authoritative checkConstraints
  bool restrictColors() {
    Arrangement ar{&pos, &mp};
    const auto& edges = g.edges();
    for (const auto& c : cs.items) {
      if (const auto* ec = std::get_if<EdgeColorC>(&c)) {
        uint32_t idx = *g.edgeIndex(ec->u, ec->v);
        uint32_t bit = 1u << (ec->color - 1);
        allowed[idx] &= ec->negated ? ~bit : bit;
      } else if (const auto* cf = std::get_if<CondColorFromC>(&c)) {
        for (size_t i = 0; i < edges.size(); i++) {
          NodeId other;
          if (edges[i].u == cf->source)
            other = edges[i].v;
          else if (edges[i].v == cf->source)
            other = edges[i].u;
          else
            continue;
          if (ar.member(other, cf->iv, cf->iv.closedA, cf->iv.closedB))
            allowed[i] &= 1u << (cf->color - 1);
        }
      } else if (const auto* ex = std::get_if<ExitColoredC>(&c)) {
        auto exempt = [&](NodeId v) {
          return std::find(ex->exempt.begin(), ex->exempt.end(), v) != ex->exempt.end();
        };
        auto boundary = [&](NodeId v) {
          return (!ex->iv.a.isMarker() && ex->iv.a.idx == v) || (!ex->iv.b.isMarker() && ex->iv.b.idx == v);
        };
        for (size_t i = 0; i < edges.size(); i++) {
          NodeId p = edges[i].u, q = edges[i].v;
          if (exempt(p) || exempt(q) || boundary(p) || boundary(q)) continue;
          if (ar.member(p, ex->iv, false, false) != ar.member(q, ex->iv, false, false))
            allowed[i] &= 1u << (ex->color - 1);
        }
      }
    }
    for (uint32_t m : allowed)
      if (m == 0) return false;
    return true;
  }

  bool color(size_t ei) {
    const auto& edges = g.edges();
    if (ei == edges.size()) return emit();
    for (int c = 1; c <= k; c++) {
      if (!(allowed[ei] & (1u << (c - 1)))) continue;
      bool clash = false;
      for (size_t j = 0; j < ei && !clash; j++)
        clash = page[j] == c && crosses(pos, edges[ei], edges[j], n);
      if (clash) continue;
      page[ei] = c;
      if (color(ei + 1)) return true;
      page[ei] = 0;
    }
    return false;
  }

  bool emit() {
    BookEmbedding emb;
    emb.layout = n == 0 ? Layout{} : Layout::fromOrder(order);
    emb.pages.page = page;
    emb.k = k;
    if (!cs.items.empty() && !checkConstraints(g, emb, cs, mp).clean()) return false;
    return yield(emb, mp);
  }
};

}  // namespace

std::optional<BookEmbedding> solveK(const Graph& g, int k, const ConstraintSet& cs) {
  Enumerator e(g, k, cs);
  std::optional<BookEmbedding> found;
  e.yield = [&](const BookEmbedding& emb, const MarkerPlacement&) {
    found = emb;
    return true;
  };
  e.run();
  return found;
}

int pagenumber(const Graph& g) {
  int upper = std::max<int>(1, int((g.nodeCount() + 1) / 2));
  for (int k = 1; k <= upper; k++)
    if (solveK(g, k)) return k;
  return upper;
}

std::size_t countModels(const Graph& g, int k, const ConstraintSet& cs) {
  Enumerator e(g, k, cs);
  std::set<std::pair<std::vector<NodeId>, std::vector<int>>> seen;
  e.yield = [&](const BookEmbedding& emb, const MarkerPlacement&) {
    BookEmbedding canon = canonicalize(emb);
    seen.insert({canon.layout.order, canon.pages.page});
    return false;
  };
  e.run();
  return seen.size();
}

}  // namespace oracle
