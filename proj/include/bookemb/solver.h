#pragma once

#include <optional>

#include "bookemb/constraints.h"

namespace bookemb {

/// 0 means unlimited.
struct Budget {
  uint64_t maxExpanded = 0;
  double wallSeconds = 0;
  int threads = 1;
};

struct SolveStats {
  uint64_t expanded = 0;
  bool exhausted = false;
  double wallMs = 0;
};

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<BookEmbedding> witness;
  SolveStats stats;
};

struct SolveOptions {
  bool symmetryBreaking = true;       // node 0 first, one reflection class
  bool fixFirstEdgeColor = true;      // applied only when no color constraints exist
  bool propagation = true;            // constraint-set pruning during search
  bool prop1Pruning = false;          // closure rule from monochromatic paths (k=3)
};

/// Exact decision: SAT with a verified witness, UNSAT after exhausting the
/// symmetry-reduced space, or Unknown at budget.
Verdict decideKPages(const Graph& graph, int k, const ConstraintSet& cs, const Budget& budget = {},
                     const SolveOptions& opts = {});

struct PagenumberResult {
  std::optional<int> pages;  // nullopt when the budget ran out first
  std::optional<BookEmbedding> witness;
  SolveStats stats;
};

PagenumberResult pagenumber(const Graph& graph, const Budget& budget = {}, const SolveOptions& opts = {});

/// Up to cap canonical, deduplicated satisfying embeddings; exhaustive when
/// the search completes under cap. Classes are up to rotation/reflection
/// (page names are significant, so first-edge color fixing is disabled).
std::vector<BookEmbedding> enumerateModels(const Graph& graph, int k, const ConstraintSet& cs,
                                           const Budget& budget, size_t cap, const SolveOptions& opts = {},
                                           SolveStats* statsOut = nullptr);

}  // namespace bookemb
