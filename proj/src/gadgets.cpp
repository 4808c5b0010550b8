#include "bookemb/gadgets.h"

#include <algorithm>
#include <string>

namespace bookemb {

namespace {

/// insert a named center into a face, replacing it by its 3 sub-faces;
/// tolerates the parent face not being registered (fresh big faces)
NodeId insertCenter(Graph& g, const std::string& role, NodeId a, NodeId b, NodeId c) {
  NodeId m = g.addNode(role);
  g.addEdge(m, a);
  g.addEdge(m, b);
  g.addEdge(m, c);
  g.unregisterTriangle(a, b, c);
  g.registerTriangle(a, b, m);
  g.registerTriangle(b, c, m);
  g.registerTriangle(a, c, m);
  return m;
}

}  // namespace

void stellate(Graph& g, const Triangle& tri, int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidSpec, "negative stellation depth");
  if (!g.triangleRegistered(tri[0], tri[1], tri[2]))
    throw Error(ErrorKind::NotATriangle, "triangle not registered: (" + std::to_string(tri[0]) + "," +
                                             std::to_string(tri[1]) + "," + std::to_string(tri[2]) + ")");
  if (depth == 0) return;
  NodeId m = insertCenter(g, "", tri[0], tri[1], tri[2]);
  stellate(g, {tri[0], tri[1], m}, depth - 1);
  stellate(g, {tri[1], tri[2], m}, depth - 1);
  stellate(g, {tri[0], tri[2], m}, depth - 1);
}

Graph buildQ1(Q1Variant variant) {
  Graph g;
  NodeId t1 = g.addNode("1");
  NodeId t2 = g.addNode("2");
  NodeId a = g.addNode("a");
  NodeId b = g.addNode("b");
  NodeId c1 = g.addNode("c1");
  NodeId c2 = g.addNode("c2");
  g.addEdge(t1, a);
  g.addEdge(t1, b);
  g.addEdge(t2, a);
  g.addEdge(t2, b);
  g.addEdge(t1, c1);
  g.addEdge(t2, c2);
  g.addEdge(a, c1);
  g.addEdge(b, c1);
  g.addEdge(a, c2);
  g.addEdge(b, c2);
  insertCenter(g, "d1a", t1, a, c1);
  insertCenter(g, "d1b", t1, b, c1);
  insertCenter(g, "d2a", t2, a, c2);
  insertCenter(g, "d2b", t2, b, c2);
  if (variant == Q1Variant::Plus12) g.addEdge(t1, t2);
  if (variant == Q1Variant::PlusAB) g.addEdge(a, b);
  return g;
}

Graph buildQ2(int depth, Q2Variant variant) {
  if (depth < 0) throw Error(ErrorKind::InvalidSpec, "negative stellation depth");
  Graph g = buildQ1(variant == Q2Variant::Plus12 ? Q1Variant::Plus12 : Q1Variant::None);
  NodeId a = g.role("a"), b = g.role("b"), c1 = g.role("c1"), c2 = g.role("c2");
  if (variant == Q2Variant::TerminalsEdge) {
    g.addEdge(a, b);
    insertCenter(g, "ea", c1, a, b);
    insertCenter(g, "eb", c2, a, b);
  } else {
    g.addEdge(c1, c2);
    insertCenter(g, "ea", a, c1, c2);
    insertCenter(g, "eb", b, c1, c2);
  }
  std::vector<Triangle> faces = g.triangles();
  for (const auto& t : faces) stellate(g, t, depth);
  return g;
}

Graph buildQuad(int copies, int depth, QuadVariant variant, Q2Variant inner) {
  if (copies < 1) throw Error(ErrorKind::InvalidSpec, "copies must be >= 1");
  if (inner == Q2Variant::Plus12)
    throw Error(ErrorKind::InvalidSpec, "the (1,2) edge is a quad-level variant, not a per-copy one");
  Graph tpl = buildQ2(depth, inner);
  NodeId q1 = tpl.role("1"), q2 = tpl.role("2"), qa = tpl.role("a"), qb = tpl.role("b");
  Graph g;
  NodeId t1 = g.addNode("1");
  NodeId t2 = g.addNode("2");
  NodeId prev = g.addNode("inner_terminal1");
  for (int i = 1; i <= copies; i++) {
    NodeId next = g.addNode("inner_terminal" + std::to_string(i + 1));
    std::vector<NodeId> map(tpl.nodeCount());
    for (NodeId t = 0; t < tpl.nodeCount(); t++) {
      if (t == q1)
        map[t] = t1;
      else if (t == q2)
        map[t] = t2;
      else if (t == qa)
        map[t] = prev;
      else if (t == qb)
        map[t] = next;
      else
        map[t] = g.addNode();
    }
    for (const auto& [name, id] : tpl.roles()) {
      if (id == q1 || id == q2 || id == qa || id == qb) continue;
      g.assignRole(name + "#" + std::to_string(i), map[id]);
    }
    for (const auto& e : tpl.edges()) {
      NodeId u = map[e.u], v = map[e.v];
      if (!g.hasEdge(u, v)) g.addEdge(u, v);  // junction edges to 1,2 repeat
    }
    for (const auto& t : tpl.triangles()) g.registerTriangleUnchecked(map[t[0]], map[t[1]], map[t[2]]);
    prev = next;
  }
  if (variant == QuadVariant::Plus12) g.addEdge(t1, t2);
  return g;
}

Graph buildG(int n, int copies, int depth) {
  if (n < 2) throw Error(ErrorKind::InvalidSpec, "path length n must be >= 2");
  Graph tpl = buildQuad(copies, depth);
  NodeId q1 = tpl.role("1"), q2 = tpl.role("2");
  NodeId qMid = tpl.role("inner_terminal" + std::to_string(innermostInnerTerminal(copies)));
  // interior = every template node except the outer terminals
  std::vector<uint32_t> interiorRank(tpl.nodeCount(), 0);
  uint32_t interiorCount = 0;
  for (NodeId t = 0; t < tpl.nodeCount(); t++) {
    if (t == q1 || t == q2) continue;
    interiorRank[t] = interiorCount++;
  }
  Graph g;
  g.reserve(size_t(gNodeCount(n, copies, depth)), size_t(gEdgeCount(n, copies, depth)));
  NodeId t1 = g.addNode("1");
  NodeId t2 = g.addNode("2");
  std::vector<NodeId> xs;
  xs.resize(size_t(n));
  for (int i = 0; i < n; i++) xs[size_t(i)] = g.addNode("x" + std::to_string(i + 1));
  for (int i = 0; i < n; i++) {
    g.addEdgeUnchecked(t1, xs[size_t(i)]);
    g.addEdgeUnchecked(t2, xs[size_t(i)]);
    if (i + 1 < n) g.addEdgeUnchecked(xs[size_t(i)], xs[size_t(i + 1)]);
  }
  // one quad per small-triangle edge, outer terminals on the edge endpoints
  auto attachQuad = [&](NodeId u, NodeId v) -> NodeId {
    NodeId base = g.nodeCount();
    for (uint32_t t = 0; t < interiorCount; t++) g.addNode();
    auto map = [&](NodeId t) -> NodeId {
      if (t == q1) return u;
      if (t == q2) return v;
      return base + interiorRank[t];
    };
    for (const auto& e : tpl.edges()) g.addEdgeUnchecked(map(e.u), map(e.v));
    return map(qMid);
  };
  for (int i = 0; i + 1 < n; i++) {
    for (int side = 0; side < 2; side++) {
      NodeId s = side == 0 ? t1 : t2;
      NodeId p = xs[size_t(i)], q = xs[size_t(i + 1)];
      NodeId m = g.addNode("center_" + std::to_string(side + 1) + "_" + std::to_string(i + 1));
      g.addEdgeUnchecked(m, s);
      g.addEdgeUnchecked(m, p);
      g.addEdgeUnchecked(m, q);
      g.registerTriangleUnchecked(s, p, q);
      const NodeId smalls[3][3] = {{s, p, m}, {s, q, m}, {p, q, m}};
      for (const auto& tri : smalls) {
        g.registerTriangleUnchecked(tri[0], tri[1], tri[2]);
        NodeId central = g.addNode();
        NodeId mids[3] = {attachQuad(tri[0], tri[1]), attachQuad(tri[1], tri[2]),
                          attachQuad(tri[0], tri[2])};
        g.addEdgeUnchecked(central, tri[0]);
        g.addEdgeUnchecked(central, tri[1]);
        g.addEdgeUnchecked(central, tri[2]);
        for (NodeId mid : mids) g.addEdgeUnchecked(central, mid);
      }
    }
  }
  return g;
}

uint64_t stellationNodesAdded(int depth) {
  uint64_t p = 1;
  for (int i = 0; i < depth; i++) p *= 3;
  return (p - 1) / 2;
}

uint64_t q2NodeCount(int depth) { return 12 + 18 * stellationNodesAdded(depth); }
uint64_t q2EdgeCount(int depth) { return 29 + 54 * stellationNodesAdded(depth); }

uint64_t quadNodeCount(int copies, int depth) {
  return 2 + uint64_t(copies) * (q2NodeCount(depth) - 2) - uint64_t(copies - 1);
}

uint64_t quadEdgeCount(int copies, int depth) {
  return uint64_t(copies) * q2EdgeCount(depth) - 2 * uint64_t(copies - 1);
}

uint64_t gNodeCount(int n, int copies, int depth) {
  uint64_t quadInterior = quadNodeCount(copies, depth) - 2;
  return 2 + uint64_t(n) + 2 * uint64_t(n - 1) * (1 + 3 * (1 + 3 * quadInterior));
}

uint64_t gEdgeCount(int n, int copies, int depth) {
  uint64_t perSmall = 6 + 3 * quadEdgeCount(copies, depth);
  return uint64_t(n - 1) + 2 * uint64_t(n) + 2 * uint64_t(n - 1) * (3 + 3 * perSmall);
}

int innermostInnerTerminal(int copies) { return (copies + 2) / 2; }

}  // namespace bookemb
