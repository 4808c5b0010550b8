#pragma once

#include "bookemb/graph.h"

namespace bookemb {

enum class Q1Variant { None, Plus12, PlusAB };

/// CentersEdge is the base construction (edge (c1,c2) present); TerminalsEdge
/// swaps it for (a,b). Plus12 = CentersEdge + edge (1,2).
enum class Q2Variant { CentersEdge, Plus12, TerminalsEdge };

enum class QuadVariant { None, Plus12 };

/// Inserts a center into a registered triangle, joins it to the corners, and
/// replaces the registry entry by the 3 sub-faces; recurses to depth-1.
/// Adds (3^depth - 1)/2 nodes and three times as many edges.
void stellate(Graph& g, const Triangle& tri, int depth);

/// 10 nodes, 22 edges (23 with a variant edge); roles 1,2,a,b,c1,c2 and the
/// four face centers d1a,d1b,d2a,d2b; registry holds the 12 sub-faces.
Graph buildQ1(Q1Variant variant = Q1Variant::None);

/// Q1 + the variant edge + face centers ea,eb, then every registered face
/// stellated to the given depth. Base (depth 0): 12 nodes, 29 edges.
Graph buildQ2(int depth, Q2Variant variant = Q2Variant::CentersEdge);

/// copies of Q2 glued on shared outer terminals 1,2 with chained inner
/// terminals (roles inner_terminal1..inner_terminal{copies+1}); junction
/// edges to the terminals deduplicated. inner selects the underlying Q2
/// construction (Plus12 here refers to the quad-level edge (1,2)).
Graph buildQuad(int copies, int depth, QuadVariant variant = QuadVariant::None,
                Q2Variant inner = Q2Variant::CentersEdge);

/// Terminals 1,2 joined to a path x1..xn; every big triangle (t,xi,xi+1) gets
/// a center, each resulting small triangle gets one quad per edge plus a
/// central node joined to the corners and the quads' innermost inner
/// terminals. Built through the bulk (unchecked) insertion paths.
Graph buildG(int n, int copies, int depth);

// closed-form counts, cross-checked by the tests' independent oracle
uint64_t stellationNodesAdded(int depth);
uint64_t q2NodeCount(int depth);
uint64_t q2EdgeCount(int depth);
uint64_t quadNodeCount(int copies, int depth);
uint64_t quadEdgeCount(int copies, int depth);
uint64_t gNodeCount(int n, int copies, int depth);
uint64_t gEdgeCount(int n, int copies, int depth);

/// 1-based index of the chain terminal treated as "innermost" (the middle).
int innermostInnerTerminal(int copies);

}  // namespace bookemb
