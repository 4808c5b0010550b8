#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bookemb/constraints.h"
#include "bookemb/solver.h"

namespace bookemb {

/// Bijection between semantic atoms and DIMACS variable indices.
/// Elements 0..nodeCount-1 are graph nodes; markers follow.
/// Layout: order vars for element pairs (i<j), then page vars, then any
/// auxiliary atoms introduced by constraint translation.
struct VarMap {
  uint32_t nodeCount = 0;
  uint32_t markerCount = 0;
  uint32_t edgeCount = 0;
  int k = 1;
  std::vector<std::string> names;  // names[v-1] for DIMACS var v

  uint32_t elements() const { return nodeCount + markerCount; }
  uint32_t orderVarCount() const { return elements() * (elements() - 1) / 2; }

  /// var for "element i before element j" (requires i < j)
  int orderVar(uint32_t i, uint32_t j) const;
  /// signed literal for "element i before element j" (any i != j)
  int beforeLit(uint32_t i, uint32_t j) const;
  int pageVar(uint32_t edgeIdx, int color) const;

  bool operator==(const VarMap&) const = default;
};

struct CnfInstance {
  uint32_t vars = 0;
  std::vector<std::vector<int>> clauses;
  VarMap map;

  void addClause(std::vector<int> lits);
  bool operator==(const CnfInstance&) const = default;
};

/// Clause count of an unconstrained encode(): cut units + transitivity +
/// exactly-one page + interleave forbids.
uint64_t predictedClauseCount(const Graph& graph, int k);

/// SAT iff a valid constrained embedding with node `cut` first exists.
CnfInstance encode(const Graph& graph, int k, const ConstraintSet& cs, NodeId cut = 0);

std::string emitDimacs(const CnfInstance& cnf);
CnfInstance parseDimacs(const std::string& text);

/// model[v-1]: +1 true, -1 false (every variable assigned).
BookEmbedding decode(const CnfInstance& cnf, const std::vector<int8_t>& model, const Graph& graph, int k);
MarkerPlacement decodeMarkers(const CnfInstance& cnf, const std::vector<int8_t>& model);

/// Whitespace-separated signed ints; "v"-prefixed lines and a trailing 0 accepted.
std::vector<int8_t> parseModel(const std::string& text, uint32_t vars);

enum class SatResult { Sat, Unsat, Unknown };

struct DpllOutcome {
  SatResult kind = SatResult::Unknown;
  std::vector<int8_t> model;  // populated on Sat
  uint64_t decisions = 0;
};

/// Minimal complete search: unit propagation + chronological backtracking.
/// budget.maxExpanded caps decisions (0 = unlimited).
DpllOutcome dpllSolve(const CnfInstance& cnf, const Budget& budget = {});

}  // namespace bookemb
