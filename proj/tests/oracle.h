#pragma once

#include <cstddef>
#include <optional>

#include "bookemb/constraints.h"
#include "bookemb/embedding.h"

// Slow reference implementations, independent of the search engine: full
// permutation x coloring enumeration with its own crossing test. The leaf
// constraint check is shared with the library (checkConstraints), which the
// engine treats as authoritative anyway; what these oracles cross-check is
// the search, pruning, and symmetry-breaking machinery.
namespace oracle {

// some k-page embedding satisfying cs, or nullopt after full enumeration
std::optional<bookemb::BookEmbedding> solveK(const bookemb::Graph& g, int k,
                                             const bookemb::ConstraintSet& cs = {});

int pagenumber(const bookemb::Graph& g);

// canonical model classes (rotation/reflection-normalized order + pages)
std::size_t countModels(const bookemb::Graph& g, int k, const bookemb::ConstraintSet& cs = {});

}  // namespace oracle
