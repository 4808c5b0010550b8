#include "bookemb/solver.h"

#include <random>

#include "doctest.h"
#include "oracle.h"
#include "testgraphs.h"

using namespace bookemb;

TEST_CASE("decision verdicts on the classics") {
  Graph c5 = testgraphs::cycle(5);
  Graph k4 = testgraphs::complete(4);
  Graph k5 = testgraphs::complete(5);
  CHECK(decideKPages(c5, 1, {}).kind == Verdict::Kind::Sat);
  CHECK(decideKPages(k4, 1, {}).kind == Verdict::Kind::Unsat);
  CHECK(decideKPages(k4, 2, {}).kind == Verdict::Kind::Sat);
  CHECK(decideKPages(k5, 2, {}).kind == Verdict::Kind::Unsat);
  Verdict v = decideKPages(k5, 3, {});
  CHECK(v.kind == Verdict::Kind::Sat);
  REQUIRE(v.witness.has_value());
  CHECK(validateEmbedding(k5, *v.witness).clean());
}

TEST_CASE("invalid k throws") {
  Graph g = testgraphs::path(2);
  CHECK_THROWS_AS(decideKPages(g, 0, {}), Error);
}

TEST_CASE("pagenumber matches the brute-force oracle on fixed graphs") {
  CHECK(pagenumber(testgraphs::cycle(5)).pages == oracle::pagenumber(testgraphs::cycle(5)));
  CHECK(pagenumber(testgraphs::complete(4)).pages == oracle::pagenumber(testgraphs::complete(4)));
  CHECK(pagenumber(testgraphs::star(5)).pages == oracle::pagenumber(testgraphs::star(5)));
  CHECK(pagenumber(testgraphs::complete(5)).pages == 3);
}

TEST_CASE("pagenumber matches the oracle on seeded random graphs") {
  std::mt19937_64 rng(20240811);
  for (int t = 0; t < 25; t++) {
    uint32_t n = 4 + uint32_t(t % 3);
    Graph g = testgraphs::randomConnected(n, rng);
    PagenumberResult r = pagenumber(g);
    REQUIRE(r.pages.has_value());
    CHECK(*r.pages == oracle::pagenumber(g));
    REQUIRE(r.witness.has_value());
    CHECK(validateEmbedding(g, *r.witness).clean());
  }
}

TEST_CASE("tiny budgets yield Unknown, not a wrong verdict") {
  Graph k5 = testgraphs::complete(5);
  Budget b;
  b.maxExpanded = 3;
  Verdict v = decideKPages(k5, 2, {}, b);
  CHECK(v.kind == Verdict::Kind::Unknown);
  CHECK(!v.stats.exhausted);
}

TEST_CASE("verdicts are stable without symmetry breaking or propagation") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 8; t++) {
    Graph g = testgraphs::randomConnected(5, rng);
    for (int k = 1; k <= 2; k++) {
      Verdict base = decideKPages(g, k, {});
      SolveOptions plain;
      plain.symmetryBreaking = false;
      plain.propagation = false;
      CHECK(decideKPages(g, k, {}, {}, plain).kind == base.kind);
      SolveOptions pruned;
      pruned.prop1Pruning = true;
      CHECK(decideKPages(g, k, {}, {}, pruned).kind == base.kind);
    }
  }
}

TEST_CASE("constrained decisions agree with the oracle") {
  std::mt19937_64 rng(99);
  Interval iv;
  iv.a = PointRef::node(1);
  iv.b = PointRef::node(2);
  iv.anchor = 0;
  for (int t = 0; t < 12; t++) {
    Graph g = testgraphs::randomConnected(5, rng);
    ConstraintSet cs;
    cs.items.push_back(InIntervalC{3, iv, t % 2 == 0});
    cs.items.push_back(EdgeColorC{g.edges()[0].u, g.edges()[0].v, 1 + t % 2});
    for (int k = 1; k <= 3; k++) {
      Verdict v = decideKPages(g, k, cs);
      bool oracleSat = oracle::solveK(g, k, cs).has_value();
      CHECK(v.kind == (oracleSat ? Verdict::Kind::Sat : Verdict::Kind::Unsat));
      if (v.witness) {
        CHECK(validateEmbedding(g, *v.witness).clean());
      }
    }
  }
}

TEST_CASE("marker constraints agree with the oracle") {
  std::mt19937_64 rng(4242);
  for (int t = 0; t < 10; t++) {
    Graph g = testgraphs::randomConnected(5, rng);
    ConstraintSet cs;
    cs.markers = {"u", "v"};
    Interval iv;
    iv.a = PointRef::marker(0);
    iv.b = PointRef::marker(1);
    iv.anchor = 0;
    cs.items.push_back(InIntervalC{1, iv});
    cs.items.push_back(InIntervalC{2, iv, t % 2 == 0});
    cs.items.push_back(CondColorFromC{0, iv, 1});
    for (int k = 1; k <= 2; k++) {
      Verdict v = decideKPages(g, k, cs);
      bool oracleSat = oracle::solveK(g, k, cs).has_value();
      CHECK(v.kind == (oracleSat ? Verdict::Kind::Sat : Verdict::Kind::Unsat));
    }
  }
}

TEST_CASE("model enumeration matches the oracle's canonical count") {
  std::mt19937_64 rng(31337);
  for (int t = 0; t < 6; t++) {
    Graph g = testgraphs::randomConnected(4 + uint32_t(t % 2), rng);
    for (int k = 1; k <= 2; k++) {
      SolveStats stats;
      auto models = enumerateModels(g, k, {}, {}, 100000, {}, &stats);
      CHECK(stats.exhausted);
      CHECK(models.size() == oracle::countModels(g, k));
      for (const auto& m : models) CHECK(validateEmbedding(g, m).clean());
    }
  }
}

TEST_CASE("model enumeration with markers matches the oracle") {
  Graph g = testgraphs::cycle(5);
  ConstraintSet cs;
  cs.markers = {"u"};
  Interval iv;
  iv.a = PointRef::marker(0);
  iv.b = PointRef::node(2);
  iv.anchor = 0;
  cs.items.push_back(InIntervalC{4, iv});
  SolveStats stats;
  auto models = enumerateModels(g, 1, cs, {}, 100000, {}, &stats);
  CHECK(stats.exhausted);
  CHECK(models.size() == oracle::countModels(g, 1, cs));
}

TEST_CASE("enumeration cap stops early and reports non-exhaustion") {
  Graph k4 = testgraphs::complete(4);
  SolveStats stats;
  auto models = enumerateModels(k4, 2, {}, {}, 2, {}, &stats);
  CHECK(models.size() == 2);
  CHECK(!stats.exhausted);
  CHECK_THROWS_AS(enumerateModels(k4, 2, {}, {}, 0), Error);
}

TEST_CASE("empty and single-node graphs") {
  Graph empty;
  CHECK(decideKPages(empty, 1, {}).kind == Verdict::Kind::Sat);
  Graph one;
  one.addNode();
  Verdict v = decideKPages(one, 1, {});
  CHECK(v.kind == Verdict::Kind::Sat);
  CHECK(pagenumber(one).pages == 1);
}
