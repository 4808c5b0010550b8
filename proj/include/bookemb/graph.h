#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bookemb {

using NodeId = uint32_t;

enum class ErrorKind {
  RoleCollision,
  SelfLoop,
  DuplicateEdge,
  UnknownNode,
  NotATriangle,
  ShapeMismatch,
  MalformedModel,
  MissingMarker,
  InvalidK,
  InvalidSpec,
  ParseError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Unordered edge, stored with u < v.
struct Edge {
  NodeId u, v;
  Edge() : u(0), v(0) {}
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}
  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator<(const Edge& o) const { return u != o.u ? u < o.u : v < o.v; }
};

using Triangle = std::array<NodeId, 3>;

struct ValidationIssue {
  bool warning;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  /// True when there are no errors (warnings allowed).
  bool clean() const {
    for (const auto& i : issues)
      if (!i.warning) return false;
    return true;
  }
  size_t errorCount() const {
    size_t c = 0;
    for (const auto& i : issues)
      if (!i.warning) c++;
    return c;
  }
  void error(const std::string& m) { issues.push_back({false, m}); }
  void warn(const std::string& m) { issues.push_back({true, m}); }
};

/// Undirected simple graph with dense node ids, a role map for the named
/// nodes of the gadget constructions, and a registry of triangles eligible
/// for stellation.
class Graph {
 public:
  Graph() = default;

  NodeId addNode(const std::string& role = "");

  /// Checked insertion: throws SelfLoop / DuplicateEdge / UnknownNode.
  void addEdge(NodeId u, NodeId v);

  /// Bulk insertion for large builders; skips the per-edge index, so
  /// hasEdge() will not see edges added this way and duplicates are only
  /// caught by validate(). Callers must guarantee freshness.
  void addEdgeUnchecked(NodeId u, NodeId v);

  /// Registers a triangle of existing edges; throws NotATriangle.
  void registerTriangle(NodeId a, NodeId b, NodeId c);

  /// Registry append without the edge-existence check (bulk builders).
  void registerTriangleUnchecked(NodeId a, NodeId b, NodeId c);

  /// Removes a registry entry (any corner order); false when absent.
  /// Stellation uses this to replace a face with its sub-faces.
  bool unregisterTriangle(NodeId a, NodeId b, NodeId c);

  bool triangleRegistered(NodeId a, NodeId b, NodeId c) const;

  bool hasEdge(NodeId u, NodeId v) const;
  std::optional<uint32_t> edgeIndex(NodeId u, NodeId v) const;

  uint32_t nodeCount() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::map<std::string, NodeId>& roles() const { return roles_; }

  NodeId role(const std::string& name) const;
  std::optional<NodeId> findRole(const std::string& name) const;
  void assignRole(const std::string& name, NodeId id);

  std::vector<std::vector<NodeId>> adjacency() const;

  void reserve(size_t nodes, size_t edgeCount);

  /// Structural check: self-loops, duplicates, triangle edges present,
  /// roles resolving, and the Euler bound m <= 3n-6 (warning only).
  ValidationReport validate() const;

 private:
  static uint64_t key(NodeId u, NodeId v) {
    Edge e(u, v);
    return (uint64_t(e.u) << 32) | e.v;
  }
  uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::map<std::string, NodeId> roles_;
  std::unordered_map<uint64_t, uint32_t> edgeIdx_;
};

}  // namespace bookemb
