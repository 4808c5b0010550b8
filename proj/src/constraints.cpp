#include "bookemb/constraints.h"

#include <algorithm>

namespace bookemb {

namespace {

// (slot, sub): nodes at (position, 0), markers between slots at (gap, rank+1)
using Key = std::pair<uint32_t, uint32_t>;

enum Tri : int8_t { TriFalse = 0, TriTrue = 1, TriUnknown = 2 };

Tri triNot(Tri t) { return t == TriUnknown ? TriUnknown : (t == TriTrue ? TriFalse : TriTrue); }

Tri triXor(Tri a, Tri b) {
  if (a == TriUnknown || b == TriUnknown) return TriUnknown;
  return a != b ? TriTrue : TriFalse;
}

struct Positions {
  const std::vector<int>* nodePos = nullptr;
  const std::vector<Key>* markerKey = nullptr;   // complete embeddings: (gap, rank+1)
  const std::vector<int>* markerSlot = nullptr;  // partial search: slot shared with nodePos

  std::optional<Key> key(const PointRef& p) const {
    if (!p.isMarker()) {
      int q = (*nodePos)[p.idx];
      if (q < 0) return std::nullopt;
      return Key{uint32_t(q), 0};
    }
    if (markerKey) return (*markerKey)[p.idx];
    if (markerSlot) {
      int q = (*markerSlot)[p.idx];
      if (q < 0) return std::nullopt;
      return Key{uint32_t(q), 0};
    }
    return std::nullopt;
  }
  std::optional<Key> nodeKey(NodeId v) const { return key(PointRef::node(v)); }
};

// b strictly inside the arc from a to c in increasing-key direction
Tri cyc(const std::optional<Key>& a, const std::optional<Key>& b, const std::optional<Key>& c) {
  if (!a || !b || !c) return TriUnknown;
  if (*a < *c) return (*a < *b && *b < *c) ? TriTrue : TriFalse;
  return (*b > *a || *b < *c) ? TriTrue : TriFalse;
}

// node x inside the designated arc of iv; closed flags decide endpoint hits
Tri membership(NodeId x, const Interval& iv, bool closedA, bool closedB, const Positions& pos) {
  if (!iv.a.isMarker() && iv.a.idx == x) return closedA ? TriTrue : TriFalse;
  if (!iv.b.isMarker() && iv.b.idx == x) return closedB ? TriTrue : TriFalse;
  auto ka = pos.key(iv.a), kb = pos.key(iv.b);
  Tri inPlus = cyc(ka, pos.nodeKey(x), kb);
  Tri anchorPlus = cyc(ka, pos.nodeKey(iv.anchor), kb);
  if (iv.mode == ArcMode::ExcludingAnchor) return triXor(inPlus, anchorPlus);
  return triNot(triXor(inPlus, anchorPlus));
}

Tri colorMatch(int assigned, int want) {
  if (assigned == 0) return TriUnknown;
  return assigned == want ? TriTrue : TriFalse;
}

struct Evaluator {
  const Graph& graph;
  const Positions& pos;
  const std::vector<int>& edgeColor;

  Tri eval(const Constraint& c) const {
    return std::visit([&](const auto& cc) { return evalOne(cc); }, c);
  }

  Tri evalOne(const BeforeC& c) const {
    return cyc(pos.nodeKey(c.anchor), pos.nodeKey(c.x), pos.nodeKey(c.y));
  }

  Tri evalOne(const InIntervalC& c) const {
    if (c.inside) return membership(c.x, c.iv, false, false, pos);
    // outside the closed interval
    return triNot(membership(c.x, c.iv, true, true, pos));
  }

  Tri evalOne(const EdgeColorC& c) const {
    auto idx = graph.edgeIndex(c.u, c.v);
    if (!idx) throw Error(ErrorKind::UnknownNode, "constraint references missing edge");
    Tri m = colorMatch(edgeColor[*idx], c.color);
    return c.negated ? triNot(m) : m;
  }

  Tri evalOne(const CondColorFromC& c) const {
    Tri all = TriTrue;
    const auto& edges = graph.edges();
    for (size_t i = 0; i < edges.size(); i++) {
      NodeId other;
      if (edges[i].u == c.source)
        other = edges[i].v;
      else if (edges[i].v == c.source)
        other = edges[i].u;
      else
        continue;
      Tri in = membership(other, c.iv, c.iv.closedA, c.iv.closedB, pos);
      if (in == TriFalse) continue;
      Tri col = colorMatch(edgeColor[i], c.color);
      if (in == TriTrue && col == TriFalse) return TriFalse;
      if (in == TriUnknown || col == TriUnknown) all = TriUnknown;
    }
    return all;
  }

  Tri evalOne(const ExitColoredC& c) const {
    Tri all = TriTrue;
    const auto& edges = graph.edges();
    for (size_t i = 0; i < edges.size(); i++) {
      NodeId p = edges[i].u, q = edges[i].v;
      if (std::find(c.exempt.begin(), c.exempt.end(), p) != c.exempt.end()) continue;
      if (std::find(c.exempt.begin(), c.exempt.end(), q) != c.exempt.end()) continue;
      // an endpoint on the interval boundary never exits
      auto onBoundary = [&](NodeId v) {
        return (!c.iv.a.isMarker() && c.iv.a.idx == v) || (!c.iv.b.isMarker() && c.iv.b.idx == v);
      };
      if (onBoundary(p) || onBoundary(q)) continue;
      Tri exit = triXor(membership(p, c.iv, false, false, pos), membership(q, c.iv, false, false, pos));
      if (exit == TriFalse) continue;
      Tri col = colorMatch(edgeColor[i], c.color);
      if (exit == TriTrue && col == TriFalse) return TriFalse;
      if (exit == TriUnknown || col == TriUnknown) all = TriUnknown;
    }
    return all;
  }
};

void validateInterval(const Graph& graph, const ConstraintSet& cs, const Interval& iv) {
  auto checkRef = [&](const PointRef& p) {
    if (p.isMarker()) {
      if (p.idx >= cs.markers.size()) throw Error(ErrorKind::MissingMarker, "marker index out of range");
    } else if (p.idx >= graph.nodeCount()) {
      throw Error(ErrorKind::UnknownNode, "interval endpoint out of range");
    }
  };
  checkRef(iv.a);
  checkRef(iv.b);
  if (iv.anchor >= graph.nodeCount()) throw Error(ErrorKind::UnknownNode, "interval anchor out of range");
  if ((!iv.a.isMarker() && iv.a.idx == iv.anchor) || (!iv.b.isMarker() && iv.b.idx == iv.anchor))
    throw Error(ErrorKind::InvalidSpec, "interval anchor coincides with an endpoint");
  if (iv.a == iv.b) throw Error(ErrorKind::InvalidSpec, "degenerate interval endpoints");
}

}  // namespace

bool ConstraintSet::hasColorConstraints() const {
  for (const auto& c : items) {
    if (std::holds_alternative<EdgeColorC>(c) || std::holds_alternative<CondColorFromC>(c) ||
        std::holds_alternative<ExitColoredC>(c))
      return true;
  }
  return false;
}

bool ConstraintSet::reflectionSensitive() const {
  for (const auto& c : items)
    if (std::holds_alternative<BeforeC>(c)) return true;
  return false;
}

std::string describeConstraint(const Constraint& c) {
  auto point = [](const PointRef& p) {
    return p.isMarker() ? "marker#" + std::to_string(p.idx) : std::to_string(p.idx);
  };
  auto interval = [&](const Interval& iv) {
    std::string s = iv.closedA ? "[" : "(";
    s += point(iv.a) + "," + point(iv.b);
    s += iv.closedB ? "]" : ")";
    s += iv.mode == ArcMode::ExcludingAnchor ? " excl " : " cont ";
    s += std::to_string(iv.anchor);
    return s;
  };
  if (const auto* bc = std::get_if<BeforeC>(&c))
    return "Before(" + std::to_string(bc->x) + "," + std::to_string(bc->y) + " from " +
           std::to_string(bc->anchor) + ")";
  if (const auto* ic = std::get_if<InIntervalC>(&c))
    return (ic->inside ? "InOpenInterval(" : "OutsideClosedInterval(") + std::to_string(ic->x) + " " +
           interval(ic->iv) + ")";
  if (const auto* ec = std::get_if<EdgeColorC>(&c))
    return std::string(ec->negated ? "EdgeColorNot" : "EdgeColorIs") + "((" + std::to_string(ec->u) + "," +
           std::to_string(ec->v) + ")," + std::to_string(ec->color) + ")";
  if (const auto* cc = std::get_if<CondColorFromC>(&c))
    return "CondColorFrom(" + std::to_string(cc->source) + "," + interval(cc->iv) + "," +
           std::to_string(cc->color) + ")";
  const auto& xc = std::get<ExitColoredC>(c);
  return "ExitColored(" + interval(xc.iv) + ", exempt " + std::to_string(xc.exempt.size()) + " nodes, " +
         std::to_string(xc.color) + ")";
}

void validateConstraintSet(const Graph& graph, const ConstraintSet& cs) {
  auto node = [&](NodeId v) {
    if (v >= graph.nodeCount()) throw Error(ErrorKind::UnknownNode, "constraint references missing node");
  };
  auto color = [](int c) {
    if (c < 1) throw Error(ErrorKind::InvalidK, "constraint color must be positive");
  };
  for (const auto& c : cs.items) {
    if (const auto* b = std::get_if<BeforeC>(&c)) {
      node(b->x);
      node(b->y);
      node(b->anchor);
      if (b->x == b->y || b->x == b->anchor || b->y == b->anchor)
        throw Error(ErrorKind::InvalidSpec, "Before requires distinct nodes");
    } else if (const auto* in = std::get_if<InIntervalC>(&c)) {
      node(in->x);
      validateInterval(graph, cs, in->iv);
    } else if (const auto* ec = std::get_if<EdgeColorC>(&c)) {
      node(ec->u);
      node(ec->v);
      color(ec->color);
      if (!graph.hasEdge(ec->u, ec->v)) throw Error(ErrorKind::UnknownNode, "edge-color constraint on missing edge");
    } else if (const auto* cf = std::get_if<CondColorFromC>(&c)) {
      node(cf->source);
      color(cf->color);
      validateInterval(graph, cs, cf->iv);
    } else if (const auto* ex = std::get_if<ExitColoredC>(&c)) {
      color(ex->color);
      for (NodeId x : ex->exempt) node(x);
      validateInterval(graph, cs, ex->iv);
    }
  }
}

ValidationReport checkConstraints(const Graph& graph, const BookEmbedding& emb, const ConstraintSet& cs,
                                  const MarkerPlacement& markers) {
  if (markers.at.size() != cs.markers.size())
    throw Error(ErrorKind::MissingMarker, "placement assigns " + std::to_string(markers.at.size()) +
                                              " markers, constraint set declares " +
                                              std::to_string(cs.markers.size()));
  std::vector<int> nodePos(graph.nodeCount());
  for (NodeId v = 0; v < graph.nodeCount(); v++) nodePos[v] = int(emb.layout.pos[v]);
  std::vector<Key> markerKey;
  for (auto [gap, rank] : markers.at) {
    if (gap >= graph.nodeCount()) throw Error(ErrorKind::MissingMarker, "marker gap out of range");
    markerKey.push_back({gap, rank + 1});
  }
  for (size_t i = 0; i < markerKey.size(); i++)
    for (size_t j = i + 1; j < markerKey.size(); j++)
      if (markerKey[i] == markerKey[j]) throw Error(ErrorKind::MissingMarker, "two markers at one cut position");

  Positions pos{&nodePos, &markerKey};
  Evaluator ev{graph, pos, emb.pages.page};
  ValidationReport rep;
  for (const auto& c : cs.items) {
    if (ev.eval(c) != TriTrue) rep.error("violated: " + describeConstraint(c));
  }
  return rep;
}

PropagateResult propagate(const PartialState& state, const ConstraintSet& cs) {
  Positions pos{state.nodePos, nullptr, state.markerPos};
  Evaluator ev{*state.graph, pos, *state.edgeColor};
  for (const auto& c : cs.items) {
    if (ev.eval(c) == TriFalse) return PropagateResult::Pruned;
  }
  return PropagateResult::Feasible;
}

uint32_t allowedPageMask(uint32_t edgeIdx, const PartialState& state, const std::vector<Constraint>& items,
                         int k) {
  uint32_t mask = k >= 31 ? ~0u : ((1u << k) - 1);
  Positions pos{state.nodePos, nullptr, state.markerPos};
  const Edge e = state.graph->edges()[edgeIdx];
  for (const auto& c : items) {
    if (const auto* ec = std::get_if<EdgeColorC>(&c)) {
      if (Edge(ec->u, ec->v) == e) {
        if (ec->negated)
          mask &= ~(1u << (ec->color - 1));
        else
          mask &= (1u << (ec->color - 1));
      }
    } else if (const auto* cf = std::get_if<CondColorFromC>(&c)) {
      NodeId other;
      if (e.u == cf->source)
        other = e.v;
      else if (e.v == cf->source)
        other = e.u;
      else
        continue;
      if (membership(other, cf->iv, cf->iv.closedA, cf->iv.closedB, pos) == TriTrue)
        mask &= (1u << (cf->color - 1));
    } else if (const auto* ex = std::get_if<ExitColoredC>(&c)) {
      if (std::find(ex->exempt.begin(), ex->exempt.end(), e.u) != ex->exempt.end()) continue;
      if (std::find(ex->exempt.begin(), ex->exempt.end(), e.v) != ex->exempt.end()) continue;
      auto onBoundary = [&](NodeId v) {
        return (!ex->iv.a.isMarker() && ex->iv.a.idx == v) || (!ex->iv.b.isMarker() && ex->iv.b.idx == v);
      };
      if (onBoundary(e.u) || onBoundary(e.v)) continue;
      if (triXor(membership(e.u, ex->iv, false, false, pos), membership(e.v, ex->iv, false, false, pos)) ==
          TriTrue)
        mask &= (1u << (ex->color - 1));
    }
  }
  return mask;
}

std::vector<Constraint> deriveForPropagation(const ConstraintSet& cs) {
  std::vector<Constraint> derived;
  for (const auto& c : cs.items) {
    const auto* cf = std::get_if<CondColorFromC>(&c);
    if (!cf || !cf->iv.a.isMarker() || !cf->iv.b.isMarker()) continue;
    // the source must be known to lie outside the marker interval
    bool sourceOutside = cf->iv.mode == ArcMode::ExcludingAnchor && cf->iv.anchor == cf->source;
    if (!sourceOutside) {
      for (const auto& d : cs.items) {
        const auto* in = std::get_if<InIntervalC>(&d);
        if (in && !in->inside && in->x == cf->source && in->iv == cf->iv) sourceOutside = true;
      }
    }
    if (!sourceOutside) continue;
    std::vector<NodeId> insiders;
    for (const auto& d : cs.items) {
      const auto* in = std::get_if<InIntervalC>(&d);
      if (in && in->inside && in->iv == cf->iv) insiders.push_back(in->x);
    }
    std::sort(insiders.begin(), insiders.end());
    // nodes between two insiders (on the arc avoiding the source) are in the
    // marker interval too, so the conditional color applies to them already
    for (size_t i = 0; i < insiders.size(); i++) {
      for (size_t j = i + 1; j < insiders.size(); j++) {
        Interval iv;
        iv.a = PointRef::node(insiders[i]);
        iv.b = PointRef::node(insiders[j]);
        iv.mode = ArcMode::ExcludingAnchor;
        iv.anchor = cf->source;
        iv.closedA = iv.closedB = true;
        derived.push_back(CondColorFromC{cf->source, iv, cf->color});
      }
    }
  }
  return derived;
}

}  // namespace bookemb
