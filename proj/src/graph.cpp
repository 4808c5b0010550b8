#include "bookemb/graph.h"

#include <algorithm>

namespace bookemb {

NodeId Graph::addNode(const std::string& role) {
  NodeId id = n_++;
  if (!role.empty()) assignRole(role, id);
  return id;
}

void Graph::assignRole(const std::string& name, NodeId id) {
  auto [it, inserted] = roles_.emplace(name, id);
  (void)it;
  if (!inserted) throw Error(ErrorKind::RoleCollision, "role already in use: " + name);
}

void Graph::addEdge(NodeId u, NodeId v) {
  if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at node " + std::to_string(u));
  if (u >= n_ || v >= n_)
    throw Error(ErrorKind::UnknownNode, "unknown node in edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  auto [it, inserted] = edgeIdx_.emplace(key(u, v), uint32_t(edges_.size()));
  (void)it;
  if (!inserted)
    throw Error(ErrorKind::DuplicateEdge, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  edges_.emplace_back(u, v);
}

void Graph::addEdgeUnchecked(NodeId u, NodeId v) { edges_.emplace_back(u, v); }

bool Graph::hasEdge(NodeId u, NodeId v) const {
  if (u == v) return false;
  return edgeIdx_.count(key(u, v)) > 0;
}

std::optional<uint32_t> Graph::edgeIndex(NodeId u, NodeId v) const {
  auto it = edgeIdx_.find(key(u, v));
  if (it == edgeIdx_.end()) return std::nullopt;
  return it->second;
}

void Graph::registerTriangle(NodeId a, NodeId b, NodeId c) {
  if (!hasEdge(a, b) || !hasEdge(b, c) || !hasEdge(a, c))
    throw Error(ErrorKind::NotATriangle, "triangle (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                             std::to_string(c) + ") is missing an edge");
  triangles_.push_back({a, b, c});
}

void Graph::registerTriangleUnchecked(NodeId a, NodeId b, NodeId c) { triangles_.push_back({a, b, c}); }

namespace {
Triangle sortedTri(NodeId a, NodeId b, NodeId c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}
}  // namespace

bool Graph::unregisterTriangle(NodeId a, NodeId b, NodeId c) {
  Triangle target = sortedTri(a, b, c);
  for (auto it = triangles_.begin(); it != triangles_.end(); ++it) {
    if (sortedTri((*it)[0], (*it)[1], (*it)[2]) == target) {
      triangles_.erase(it);
      return true;
    }
  }
  return false;
}

bool Graph::triangleRegistered(NodeId a, NodeId b, NodeId c) const {
  Triangle target = sortedTri(a, b, c);
  for (const auto& t : triangles_)
    if (sortedTri(t[0], t[1], t[2]) == target) return true;
  return false;
}

NodeId Graph::role(const std::string& name) const {
  auto it = roles_.find(name);
  if (it == roles_.end()) throw Error(ErrorKind::UnknownNode, "unknown role: " + name);
  return it->second;
}

std::optional<NodeId> Graph::findRole(const std::string& name) const {
  auto it = roles_.find(name);
  if (it == roles_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<NodeId>> Graph::adjacency() const {
  std::vector<std::vector<NodeId>> adj(n_);
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

void Graph::reserve(size_t nodes, size_t edgeCount) {
  (void)nodes;
  edges_.reserve(edgeCount);
}

ValidationReport Graph::validate() const {
  ValidationReport rep;
  // Duplicate/self-loop scan over a sorted key copy; handles bulk-built
  // graphs that never populated the hash index.
  std::vector<uint64_t> keys;
  keys.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.u == e.v) rep.error("self-loop at node " + std::to_string(e.u));
    if (e.v >= n_) rep.error("edge endpoint out of range: " + std::to_string(e.v));
    keys.push_back((uint64_t(e.u) << 32) | e.v);
  }
  std::sort(keys.begin(), keys.end());
  for (size_t i = 1; i < keys.size(); i++) {
    if (keys[i] == keys[i - 1])
      rep.error("duplicate edge (" + std::to_string(uint32_t(keys[i] >> 32)) + "," +
                std::to_string(uint32_t(keys[i])) + ")");
  }
  auto present = [&](NodeId u, NodeId v) {
    Edge e(u, v);
    uint64_t k = (uint64_t(e.u) << 32) | e.v;
    return std::binary_search(keys.begin(), keys.end(), k);
  };
  size_t badTriangles = 0;
  for (const auto& t : triangles_) {
    if (!present(t[0], t[1]) || !present(t[1], t[2]) || !present(t[0], t[2])) badTriangles++;
  }
  if (badTriangles > 0)
    rep.error(std::to_string(badTriangles) + " registered triangle(s) with a missing edge");
  {
    // duplicate registry entries are legal but suspicious
    std::vector<Triangle> ts = triangles_;
    for (auto& t : ts) std::sort(t.begin(), t.end());
    std::sort(ts.begin(), ts.end());
    size_t dups = 0;
    for (size_t i = 1; i < ts.size(); i++)
      if (ts[i] == ts[i - 1]) dups++;
    if (dups > 0) rep.warn(std::to_string(dups) + " duplicate triangle registry entries");
  }
  for (const auto& [name, id] : roles_) {
    if (id >= n_) rep.error("role '" + name + "' resolves to missing node " + std::to_string(id));
  }
  if (n_ >= 3 && edges_.size() > 3 * size_t(n_) - 6) {
    rep.warn("edge count " + std::to_string(edges_.size()) + " exceeds planar bound 3n-6 = " +
             std::to_string(3 * size_t(n_) - 6));
  }
  return rep;
}

}  // namespace bookemb
