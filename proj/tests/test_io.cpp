#include "bookemb/io.h"

#include <functional>
#include <string>

#include "doctest.h"
#include "bookemb/gadgets.h"
#include "testgraphs.h"

using namespace bookemb;

namespace {

bool sameGraph(const Graph& a, const Graph& b) {
  return a.nodeCount() == b.nodeCount() && a.edges() == b.edges() && a.roles() == b.roles() &&
         a.triangles() == b.triangles();
}

std::string thrownMessage(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("graph JSON round-trips") {
  Graph q1 = buildQ1(Q1Variant::Plus12);
  std::string bytes = serializeGraphJson(q1);
  Graph back = parseGraphJson(bytes);
  CHECK(sameGraph(q1, back));
  CHECK(serializeGraphJson(back) == bytes);  // canonical form is a fixed point
  CHECK(sniffKind(bytes) == FileKind::GraphJson);
}

TEST_CASE("compact text round-trips byte-identically for G(4)") {
  Graph g = buildG(4, 3, 1);
  std::string bytes = serializeGraphText(g);
  Graph back = parseGraphText(bytes);
  CHECK(back.nodeCount() == g.nodeCount());
  CHECK(back.edges() == g.edges());
  CHECK(serializeGraphText(back) == bytes);
  CHECK(sniffKind(bytes) == FileKind::GraphText);
  CHECK(sameGraph(parseGraphAuto(bytes), back));
}

TEST_CASE("graph parsers reject rather than repair") {
  CHECK_THROWS_AS(parseGraphJson("{\"n\":2}"), Error);  // missing keys
  CHECK_THROWS_AS(
      parseGraphJson("{\"edges\":[[1,0]],\"n\":2,\"roles\":{},\"triangles\":[]}"), Error);  // u >= v
  CHECK_THROWS_AS(
      parseGraphJson("{\"edges\":[[0,1],[0,1]],\"n\":2,\"roles\":{},\"triangles\":[]}"), Error);
  CHECK_THROWS_AS(
      parseGraphJson("{\"edges\":[],\"n\":1,\"n\":1,\"roles\":{},\"triangles\":[]}"), Error);  // dup key
  CHECK_THROWS_AS(
      parseGraphJson("{\"edges\":[],\"extra\":0,\"n\":1,\"roles\":{},\"triangles\":[]}"), Error);
  CHECK_THROWS_AS(parseGraphText("bookemb 2 1\ne 0 0\n"), Error);
  CHECK_THROWS_AS(parseGraphText("bookemb 2 2\ne 0 1\n"), Error);  // count mismatch
  CHECK_THROWS_AS(parseGraphText("bookemb 2 1\ne 1 0\n"), Error);  // u >= v
}

TEST_CASE("roles sidecar round-trips") {
  Graph g = buildQ2(1);
  std::string bytes = serializeRoles(g);
  CHECK(sniffKind(bytes) == FileKind::Roles);
  Graph bare = parseGraphText(serializeGraphText(g));
  parseRolesInto(bytes, bare);
  CHECK(bare.roles() == g.roles());
  CHECK_THROWS_AS(parseRolesInto("{\"roles\":{\"x\":99}}", bare), Error);
}

TEST_CASE("certificates round-trip and reject malformed input") {
  Graph k4 = testgraphs::complete(4);
  BookEmbedding emb;
  emb.layout = Layout::fromOrder({0, 1, 2, 3});
  emb.pages.page = {1, 1, 1, 1, 2, 1};
  emb.k = 2;
  std::string bytes = serializeCertificate(k4, emb);
  CHECK(sniffKind(bytes) == FileKind::Certificate);
  BookEmbedding back = parseCertificate(bytes, k4);
  CHECK(back.layout.order == emb.layout.order);
  CHECK(back.pages.page == emb.pages.page);
  CHECK(back.k == 2);
  CHECK(serializeCertificate(k4, back) == bytes);

  std::string dup = bytes;
  // duplicated page key must be named in the error
  auto pos = dup.find("\"0-1\"");
  REQUIRE(pos != std::string::npos);
  dup.insert(pos, "\"0-1\": 1,\n    ");
  std::string msg = thrownMessage([&] { parseCertificate(dup, k4); });
  CHECK(msg.find("0-1") != std::string::npos);

  CHECK_THROWS_AS(
      parseCertificate("{\"k\":1,\"order\":[0,0,1,2],\"pages\":{}}", k4), Error);  // not a permutation
  CHECK_THROWS_AS(
      parseCertificate("{\"k\":1,\"order\":[0,1,2,3],\"pages\":{\"0-1\":1}}", k4), Error);  // coverage
}

TEST_CASE("constraint sets round-trip through JSON") {
  Graph g = buildQ1();
  ConstraintSet cs;
  cs.markers = {"u", "v"};
  Interval miv;
  miv.a = PointRef::marker(0);
  miv.b = PointRef::marker(1);
  miv.anchor = g.role("1");
  Interval niv;
  niv.a = PointRef::node(g.role("a"));
  niv.b = PointRef::node(g.role("b"));
  niv.anchor = g.role("1");
  niv.mode = ArcMode::ContainingAnchor;
  niv.closedA = niv.closedB = true;
  cs.items.push_back(BeforeC{g.role("a"), g.role("b"), g.role("1")});
  cs.items.push_back(InIntervalC{g.role("c1"), miv});
  cs.items.push_back(InIntervalC{g.role("c2"), niv, false});
  cs.items.push_back(EdgeColorC{g.role("1"), g.role("a"), 2, true});
  cs.items.push_back(CondColorFromC{g.role("1"), miv, 1});
  cs.items.push_back(ExitColoredC{miv, {g.role("1"), g.role("2")}, 3});
  std::string bytes = serializeConstraints(cs);
  CHECK(sniffKind(bytes) == FileKind::Constraints);
  ConstraintSet back = parseConstraints(bytes, g);
  CHECK(back.markers == cs.markers);
  REQUIRE(back.items.size() == cs.items.size());
  CHECK(serializeConstraints(back) == bytes);
  for (size_t i = 0; i < cs.items.size(); i++)
    CHECK(describeConstraint(back.items[i]) == describeConstraint(cs.items[i]));
}

TEST_CASE("constraint parser resolves role references") {
  Graph g = buildQ1();
  std::string bytes =
      "{\"markers\":[],\"constraints\":[{\"type\":\"edge_color\",\"u\":\"role:1\",\"v\":\"role:a\","
      "\"color\":1,\"negated\":false}]}";
  ConstraintSet cs = parseConstraints(bytes, g);
  REQUIRE(cs.items.size() == 1);
  const auto* ec = std::get_if<EdgeColorC>(&cs.items[0]);
  REQUIRE(ec != nullptr);
  CHECK(Edge(ec->u, ec->v) == Edge(g.role("1"), g.role("a")));
  CHECK_THROWS_AS(parseConstraints(
      "{\"markers\":[],\"constraints\":[{\"type\":\"edge_color\",\"u\":\"role:nope\",\"v\":\"id:0\","
      "\"color\":1,\"negated\":false}]}", g), Error);
}

TEST_CASE("sniffKind recognizes the documented headers") {
  CHECK(sniffKind("c comment\np cnf 1 1\n1 0\n") == FileKind::Dimacs);
  CHECK(sniffKind("p cnf 1 1\n1 0\n") == FileKind::Dimacs);
  CHECK(sniffKind("{\"scenario\": \"x\", \"verdict\": \"sat\"}") == FileKind::Report);
}
