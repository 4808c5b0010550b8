#pragma once

#include <optional>
#include <vector>

#include "bookemb/graph.h"

namespace bookemb {

/// Circular node order. order is a permutation of 0..n-1; pos is its inverse.
struct Layout {
  std::vector<NodeId> order;
  std::vector<uint32_t> pos;

  static Layout fromOrder(std::vector<NodeId> order);
  uint32_t size() const { return uint32_t(order.size()); }
};

/// Page per edge index, values 1..k.
struct PageAssignment {
  std::vector<int> page;
};

struct BookEmbedding {
  Layout layout;
  PageAssignment pages;
  int k = 1;
};

/// True iff walking the circle from a (in stored direction) meets b before c.
/// All three must be distinct.
bool cyclicallyOrdered(NodeId a, NodeId b, NodeId c, const Layout& layout);

/// Chord-crossing predicate: endpoints distinct and strictly interleaved in
/// the circular order.
bool conflicts(const Edge& e1, const Edge& e2, const Layout& layout);

/// An edge exits the interval (a,b) when its endpoints lie on the two
/// different open arcs between a and b (symmetric in the two arcs).
bool exitsInterval(const Edge& e, NodeId a, NodeId b, const Layout& layout);

/// Empty report iff every conflicting edge pair has distinct pages.
/// Throws ShapeMismatch when the embedding does not cover the graph.
ValidationReport validateEmbedding(const Graph& graph, const BookEmbedding& emb);

/// Rotates node 0 to the front and picks the direction that makes the second
/// element minimal. Page assignment is untouched.
BookEmbedding canonicalize(const BookEmbedding& emb);

/// Some path from a to b using only edges of the given page, or nullopt.
std::optional<std::vector<NodeId>> monochromaticPath(const Graph& graph, const BookEmbedding& emb, NodeId a,
                                                     NodeId b, int color);

/// Sanity oracle for the closure properties of monochromatic paths: for node
/// pairs joined by a one-color path, no disjoint same-color edge exits the
/// interval; with paths of all three colors, nothing disjoint exits and each
/// remaining component stays on one side. Any violation indicates a bug, not
/// a property of the input. Pairs are sampled above 12 nodes (fixed seed).
ValidationReport checkProposition1(const Graph& graph, const BookEmbedding& emb, uint64_t sampleSeed = 12345);

}  // namespace bookemb
