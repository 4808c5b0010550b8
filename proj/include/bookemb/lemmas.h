#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bookemb/cnf.h"
#include "bookemb/solver.h"

namespace bookemb {

struct Scenario {
  std::string name;
  Graph graph;
  ConstraintSet cs;
  int k = 3;
  enum class Expect { Unsat, Sat, None } expect = Expect::None;
  bool exportOnly = false;  // encoding too large for the built-in search
};

std::vector<std::string> scenarioNames();

/// Throws InvalidSpec (message lists the registry) for unknown names.
Scenario makeScenario(const std::string& name);

struct OutcomeReport {
  std::string scenario;
  std::string verdict;  // sat | unsat | unknown | export-only
  uint64_t nodesExpanded = 0;
  double wallMs = 0;
  bool exhausted = false;
  bool matchedExpectation = true;  // false = hard failure
  std::optional<BookEmbedding> witness;
};

/// Runs the backtracking engine (export-only scenarios return verdict
/// "export-only" untouched). A verified witness backs every "sat"; an
/// expectation mismatch is flagged, and Unknown never matches.
OutcomeReport runScenario(const Scenario& s, const Budget& budget = {});

/// DIMACS + atom map of the scenario's encoding (cut at node 0).
std::string exportScenarioDimacs(const Scenario& s);

/// Checks an external SAT model against the scenario's encoding, embedding
/// validity, and the constraint set.
OutcomeReport verifyScenarioModel(const Scenario& s, const std::string& modelText);

/// wall_ms is zeroed in the canonical form so reports are byte-stable.
std::string reportJson(const OutcomeReport& r, const Graph& g);

/// FNV-1a over the serialized (graph, constraints, k); platform-stable.
uint64_t scenarioHash(const Scenario& s);

struct Prop1Report {
  int attempts = 0;
  int embeddings = 0;
  int violations = 0;
};

/// Solves seeded random connected graphs (n <= 9) for their pagenumber and
/// runs checkProposition1 on every witness.
Prop1Report runProp1Suite(int samples, uint64_t seed);

}  // namespace bookemb
