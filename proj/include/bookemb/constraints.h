#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bookemb/embedding.h"
#include "bookemb/graph.h"

namespace bookemb {

/// A point on the circle: a graph node or a marker (virtual interval
/// boundary carrying no edges). Marker idx indexes ConstraintSet::markers.
struct PointRef {
  enum class Kind : uint8_t { Node, Marker };
  Kind kind = Kind::Node;
  uint32_t idx = 0;
  bool isMarker() const { return kind == Kind::Marker; }
  bool operator==(const PointRef&) const = default;
  static PointRef node(NodeId v) { return {Kind::Node, v}; }
  static PointRef marker(uint32_t m) { return {Kind::Marker, m}; }
};

/// On a circle the interval (a,b) is ambiguous; the designated arc is the
/// one excluding (or containing) the anchor node.
enum class ArcMode : uint8_t { ExcludingAnchor, ContainingAnchor };

struct Interval {
  PointRef a, b;
  ArcMode mode = ArcMode::ExcludingAnchor;
  NodeId anchor = 0;
  bool closedA = false, closedB = false;  // endpoint inclusion (node endpoints only)
  bool operator==(const Interval&) const = default;
};

/// x precedes y when the circle is cut just before the anchor and read in
/// the layout's stored direction.
struct BeforeC {
  NodeId x, y, anchor;
};

/// inside=true: x strictly inside the designated open arc.
/// inside=false: x outside the closed interval (neither in the arc nor an endpoint).
struct InIntervalC {
  NodeId x;
  Interval iv;
  bool inside = true;
};

struct EdgeColorC {
  NodeId u, v;
  int color;
  bool negated = false;  // true: edge must NOT have this color
};

/// Every edge from source to a node of the interval has the given page.
struct CondColorFromC {
  NodeId source;
  Interval iv;
  int color;
};

/// Every edge exiting the interval whose endpoints both avoid the exempt set
/// has the given page.
struct ExitColoredC {
  Interval iv;
  std::vector<NodeId> exempt;
  int color;
};

using Constraint = std::variant<BeforeC, InIntervalC, EdgeColorC, CondColorFromC, ExitColoredC>;

struct ConstraintSet {
  std::vector<std::string> markers;
  std::vector<Constraint> items;

  bool hasMarkers() const { return !markers.empty(); }
  bool hasColorConstraints() const;
  /// Before is direction-dependent; everything else is reflection-invariant.
  bool reflectionSensitive() const;
};

std::string describeConstraint(const Constraint& c);

/// Throws UnknownNode / InvalidK when the set references missing nodes,
/// markers, or non-positive colors.
void validateConstraintSet(const Graph& graph, const ConstraintSet& cs);

/// Marker m sits in the gap after layout position gap[m] (circularly),
/// ordered among same-gap markers by rank.
struct MarkerPlacement {
  std::vector<std::pair<uint32_t, uint32_t>> at;  // (gap, rank) per marker
};

/// Empty report iff every constraint holds for the complete embedding and
/// marker placement. Throws MissingMarker on a placement size mismatch.
ValidationReport checkConstraints(const Graph& graph, const BookEmbedding& emb, const ConstraintSet& cs,
                                  const MarkerPlacement& markers = {});

/// Partial solver state: relative circular positions of placed nodes and the
/// pages of already-colored edges. Relative order of placed nodes is final,
/// so any constraint that evaluates to false here can never be repaired.
struct PartialState {
  const Graph* graph = nullptr;
  const std::vector<int>* nodePos = nullptr;    // -1 = unplaced
  const std::vector<int>* edgeColor = nullptr;  // 0 = uncolored, by edge index
  int k = 1;
  /// markers placed as circle elements during search: slot in the same
  /// partial order as nodePos, -1 while unplaced; null = no markers
  const std::vector<int>* markerPos = nullptr;
};

enum class PropagateResult { Feasible, Pruned };

/// Pruned only when some constraint is definitively violated by the partial
/// state (sound: never prunes a state extendable to a checked-valid embedding).
PropagateResult propagate(const PartialState& state, const ConstraintSet& cs);

/// Bitmask of pages (bit color-1) still permitted for an uncolored edge by
/// the color-bearing constraints under the partial state; undecidable
/// memberships do not restrict.
uint32_t allowedPageMask(uint32_t edgeIdx, const PartialState& state, const std::vector<Constraint>& items,
                         int k);

/// Additional node-only constraints implied by marker constraints, used to
/// prune before markers are placed. Currently: CondColorFrom over a marker
/// interval I, with the source known outside I and nodes x,y constrained
/// inside I, implies CondColorFrom over the closed node interval [x,y] on
/// the arc avoiding the source.
std::vector<Constraint> deriveForPropagation(const ConstraintSet& cs);

}  // namespace bookemb
