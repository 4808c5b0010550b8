#include "bookemb/io.h"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bookemb {

using nlohmann::json;

namespace {

std::string positionOf(const std::string& bytes, size_t byteOff) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byteOff && i < bytes.size(); i++) {
    if (bytes[i] == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// JSON parse with duplicate-key rejection and positioned errors.
json parseJsonStrict(const std::string& bytes) {
  std::vector<std::set<std::string>> keyStack;
  std::string dupKey;
  auto cb = [&](int, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::object_start) {
      keyStack.emplace_back();
    } else if (event == json::parse_event_t::object_end) {
      keyStack.pop_back();
    } else if (event == json::parse_event_t::key) {
      if (!keyStack.back().insert(parsed.get<std::string>()).second && dupKey.empty())
        dupKey = parsed.get<std::string>();
    }
    return true;
  };
  json j;
  try {
    j = json::parse(bytes, cb);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("JSON parse error at ") + positionOf(bytes, e.byte) +
                                           ": " + e.what());
  }
  if (!dupKey.empty()) throw Error(ErrorKind::ParseError, "duplicate key \"" + dupKey + "\"");
  return j;
}

std::string dumpCanonical(const json& j) { return j.dump(2) + "\n"; }

void requireKeys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                 const std::string& what) {
  for (const auto& k : required)
    if (!j.contains(k)) throw Error(ErrorKind::ParseError, what + ": missing key \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!required.count(it.key()) && !optional.count(it.key()))
      throw Error(ErrorKind::ParseError, what + ": unknown key \"" + it.key() + "\"");
}

}  // namespace

FileKind sniffKind(const std::string& bytes) {
  size_t i = bytes.find_first_not_of(" \t\r\n");
  if (i == std::string::npos) throw Error(ErrorKind::ParseError, "empty input");
  if (bytes.compare(i, 7, "bookemb") == 0) return FileKind::GraphText;
  if (bytes[i] == 'c' || bytes[i] == 'p') return FileKind::Dimacs;
  if (bytes[i] != '{') throw Error(ErrorKind::ParseError, "unrecognized header at " + positionOf(bytes, i));
  json j = parseJsonStrict(bytes);
  if (j.contains("edges")) return FileKind::GraphJson;
  if (j.contains("pages") && j.contains("order")) return FileKind::Certificate;
  if (j.contains("constraints")) return FileKind::Constraints;
  if (j.contains("verdict")) return FileKind::Report;
  if (j.contains("roles")) return FileKind::Roles;
  throw Error(ErrorKind::ParseError, "JSON input matches no known file kind");
}

std::string serializeGraphJson(const Graph& g) {
  json j;
  j["n"] = g.nodeCount();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  json roles = json::object();
  for (const auto& [name, id] : g.roles()) roles[name] = id;
  j["roles"] = std::move(roles);
  json tris = json::array();
  for (const auto& t : g.triangles()) tris.push_back({t[0], t[1], t[2]});
  j["triangles"] = std::move(tris);
  return dumpCanonical(j);
}

Graph parseGraphJson(const std::string& bytes) {
  json j = parseJsonStrict(bytes);
  requireKeys(j, {"n", "edges"}, {"roles", "triangles"}, "graph");
  Graph g;
  uint64_t n = j.at("n").get<uint64_t>();
  for (uint64_t i = 0; i < n; i++) g.addNode();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "graph: edge entry is not a pair");
    NodeId u = e[0].get<NodeId>(), v = e[1].get<NodeId>();
    if (u >= v) throw Error(ErrorKind::ParseError, "graph: edge (" + std::to_string(u) + "," +
                                                       std::to_string(v) + ") is not in canonical u<v form");
    g.addEdge(u, v);
  }
  if (j.contains("roles"))
    for (auto it = j.at("roles").begin(); it != j.at("roles").end(); ++it)
      g.assignRole(it.key(), it.value().get<NodeId>());
  if (j.contains("triangles"))
    for (const auto& t : j.at("triangles")) {
      if (!t.is_array() || t.size() != 3)
        throw Error(ErrorKind::ParseError, "graph: triangle entry is not a triple");
      g.registerTriangle(t[0].get<NodeId>(), t[1].get<NodeId>(), t[2].get<NodeId>());
    }
  return g;
}

void writeGraphText(std::ostream& out, const Graph& g) {
  out << "bookemb " << g.nodeCount() << " " << g.edges().size() << "\n";
  char buf[64];
  for (const auto& e : g.edges()) {
    int len = std::snprintf(buf, sizeof(buf), "e %u %u\n", e.u, e.v);
    out.write(buf, len);
  }
}

std::string serializeGraphText(const Graph& g) {
  std::ostringstream out;
  writeGraphText(out, g);
  return out.str();
}

Graph parseGraphText(const std::string& bytes) {
  const char* p = bytes.c_str();
  const char* end = p + bytes.size();
  size_t line = 1;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
  };
  if (bytes.compare(0, 8, "bookemb ") != 0) fail("expected \"bookemb <n> <m>\" header");
  p += 8;
  char* q = nullptr;
  uint64_t n = std::strtoull(p, &q, 10);
  if (q == p) fail("bad node count");
  p = q;
  uint64_t m = std::strtoull(p, &q, 10);
  if (q == p) fail("bad edge count");
  p = q;
  if (*p != '\n') fail("trailing content after header");
  p++;
  line++;
  Graph g;
  g.reserve(size_t(n), size_t(m));
  for (uint64_t i = 0; i < n; i++) g.addNode();
  for (uint64_t i = 0; i < m; i++) {
    if (p >= end || *p != 'e' || p[1] != ' ') fail("expected \"e u v\"");
    p += 2;
    uint64_t u = std::strtoull(p, &q, 10);
    if (q == p) fail("bad endpoint");
    p = q;
    uint64_t v = std::strtoull(p, &q, 10);
    if (q == p) fail("bad endpoint");
    p = q;
    if (*p != '\n') fail("trailing content after edge");
    p++;
    line++;
    if (u >= v) fail("edge not in canonical u<v form");
    if (v >= n) fail("edge endpoint out of range");
    g.addEdgeUnchecked(NodeId(u), NodeId(v));
  }
  if (p != end) fail("content after declared edge list");
  return g;
}

Graph parseGraphAuto(const std::string& bytes) {
  size_t i = bytes.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && bytes[i] == '{') return parseGraphJson(bytes);
  return parseGraphText(bytes);
}

std::string serializeRoles(const Graph& g) {
  json roles = json::object();
  for (const auto& [name, id] : g.roles()) roles[name] = id;
  json j;
  j["roles"] = std::move(roles);
  return dumpCanonical(j);
}

void parseRolesInto(const std::string& bytes, Graph& g) {
  json j = parseJsonStrict(bytes);
  requireKeys(j, {"roles"}, {}, "roles");
  for (auto it = j.at("roles").begin(); it != j.at("roles").end(); ++it) {
    NodeId id = it.value().get<NodeId>();
    if (id >= g.nodeCount())
      throw Error(ErrorKind::ParseError, "roles: \"" + it.key() + "\" names missing node " + std::to_string(id));
    g.assignRole(it.key(), id);
  }
}

std::string serializeCertificate(const Graph& g, const BookEmbedding& emb) {
  json j;
  j["k"] = emb.k;
  j["order"] = emb.layout.order;
  json pages = json::object();
  for (uint32_t i = 0; i < g.edges().size(); i++) {
    const Edge& e = g.edges()[i];
    pages[std::to_string(e.u) + "-" + std::to_string(e.v)] = emb.pages.page[i];
  }
  j["pages"] = std::move(pages);
  return dumpCanonical(j);
}

BookEmbedding parseCertificate(const std::string& bytes, const Graph& g) {
  json j = parseJsonStrict(bytes);
  requireKeys(j, {"k", "order", "pages"}, {}, "certificate");
  BookEmbedding emb;
  emb.k = j.at("k").get<int>();
  if (emb.k < 1) throw Error(ErrorKind::InvalidK, "certificate: k must be >= 1");
  std::vector<NodeId> order = j.at("order").get<std::vector<NodeId>>();
  if (order.size() != g.nodeCount())
    throw Error(ErrorKind::ShapeMismatch, "certificate: order length does not match node count");
  std::vector<bool> seen(g.nodeCount(), false);
  for (NodeId v : order) {
    if (v >= g.nodeCount() || seen[v])
      throw Error(ErrorKind::ParseError, "certificate: order is not a permutation (node " + std::to_string(v) + ")");
    seen[v] = true;
  }
  emb.layout = g.nodeCount() > 0 ? Layout::fromOrder(order) : Layout{};
  emb.pages.page.assign(g.edges().size(), 0);
  size_t assigned = 0;
  for (auto it = j.at("pages").begin(); it != j.at("pages").end(); ++it) {
    const std::string& key = it.key();
    size_t dash = key.find('-');
    if (dash == std::string::npos)
      throw Error(ErrorKind::ParseError, "certificate: bad edge key \"" + key + "\"");
    NodeId u = NodeId(std::stoul(key.substr(0, dash)));
    NodeId v = NodeId(std::stoul(key.substr(dash + 1)));
    auto ei = g.edgeIndex(u, v);
    if (!ei) throw Error(ErrorKind::ShapeMismatch, "certificate: edge key \"" + key + "\" not in graph");
    int page = it.value().get<int>();
    if (page < 1 || page > emb.k)
      throw Error(ErrorKind::ParseError, "certificate: page out of range for \"" + key + "\"");
    emb.pages.page[*ei] = page;
    assigned++;
  }
  if (assigned != g.edges().size())
    throw Error(ErrorKind::ShapeMismatch, "certificate: missing edge key (covered " + std::to_string(assigned) +
                                              " of " + std::to_string(g.edges().size()) + ")");
  return emb;
}

namespace {

std::string refStr(const PointRef& p, const ConstraintSet& cs) {
  if (p.isMarker()) return "marker:" + cs.markers[p.idx];
  return "id:" + std::to_string(p.idx);
}

PointRef parseRef(const std::string& s, const Graph& g, const ConstraintSet& cs) {
  if (s.rfind("id:", 0) == 0) return PointRef::node(NodeId(std::stoul(s.substr(3))));
  if (s.rfind("role:", 0) == 0) return PointRef::node(g.role(s.substr(5)));
  if (s.rfind("marker:", 0) == 0) {
    std::string name = s.substr(7);
    for (uint32_t i = 0; i < cs.markers.size(); i++)
      if (cs.markers[i] == name) return PointRef::marker(i);
    throw Error(ErrorKind::ParseError, "constraints: unknown marker \"" + name + "\"");
  }
  throw Error(ErrorKind::ParseError, "constraints: bad point ref \"" + s + "\" (want id:/role:/marker:)");
}

NodeId parseNodeRef(const std::string& s, const Graph& g, const ConstraintSet& cs) {
  PointRef p = parseRef(s, g, cs);
  if (p.isMarker()) throw Error(ErrorKind::ParseError, "constraints: \"" + s + "\" must be a node, not a marker");
  return p.idx;
}

NodeId parseNodeRef(const json& jv, const Graph& g, const ConstraintSet& cs) {
  return parseNodeRef(jv.get<std::string>(), g, cs);
}

json intervalJson(const Interval& iv, const ConstraintSet& cs) {
  json j;
  j["a"] = refStr(iv.a, cs);
  j["b"] = refStr(iv.b, cs);
  j["arc"] = iv.mode == ArcMode::ExcludingAnchor ? "excluding" : "containing";
  j["anchor"] = "id:" + std::to_string(iv.anchor);
  j["closed_a"] = iv.closedA;
  j["closed_b"] = iv.closedB;
  return j;
}

Interval parseInterval(const json& j, const Graph& g, const ConstraintSet& cs) {
  requireKeys(j, {"a", "b", "arc", "anchor"}, {"closed_a", "closed_b"}, "interval");
  Interval iv;
  iv.a = parseRef(j.at("a").get<std::string>(), g, cs);
  iv.b = parseRef(j.at("b").get<std::string>(), g, cs);
  std::string arc = j.at("arc").get<std::string>();
  if (arc == "excluding")
    iv.mode = ArcMode::ExcludingAnchor;
  else if (arc == "containing")
    iv.mode = ArcMode::ContainingAnchor;
  else
    throw Error(ErrorKind::ParseError, "interval: arc must be \"excluding\" or \"containing\"");
  iv.anchor = parseNodeRef(j.at("anchor").get<std::string>(), g, cs);
  iv.closedA = j.value("closed_a", false);
  iv.closedB = j.value("closed_b", false);
  return iv;
}

}  // namespace

std::string serializeConstraints(const ConstraintSet& cs) {
  json j;
  j["markers"] = cs.markers;
  json items = json::array();
  for (const auto& c : cs.items) {
    json e;
    if (const auto* bc = std::get_if<BeforeC>(&c)) {
      e["type"] = "before";
      e["x"] = "id:" + std::to_string(bc->x);
      e["y"] = "id:" + std::to_string(bc->y);
      e["anchor"] = "id:" + std::to_string(bc->anchor);
    } else if (const auto* ic = std::get_if<InIntervalC>(&c)) {
      e["type"] = "in_interval";
      e["x"] = "id:" + std::to_string(ic->x);
      e["interval"] = intervalJson(ic->iv, cs);
      e["inside"] = ic->inside;
    } else if (const auto* ec = std::get_if<EdgeColorC>(&c)) {
      e["type"] = "edge_color";
      e["u"] = "id:" + std::to_string(ec->u);
      e["v"] = "id:" + std::to_string(ec->v);
      e["color"] = ec->color;
      e["negated"] = ec->negated;
    } else if (const auto* cc = std::get_if<CondColorFromC>(&c)) {
      e["type"] = "cond_color_from";
      e["source"] = "id:" + std::to_string(cc->source);
      e["interval"] = intervalJson(cc->iv, cs);
      e["color"] = cc->color;
    } else if (const auto* xc = std::get_if<ExitColoredC>(&c)) {
      e["type"] = "exit_colored";
      e["interval"] = intervalJson(xc->iv, cs);
      json ex = json::array();
      for (NodeId v : xc->exempt) ex.push_back("id:" + std::to_string(v));
      e["exempt"] = std::move(ex);
      e["color"] = xc->color;
    }
    items.push_back(std::move(e));
  }
  j["constraints"] = std::move(items);
  return dumpCanonical(j);
}

ConstraintSet parseConstraints(const std::string& bytes, const Graph& g) {
  json j = parseJsonStrict(bytes);
  requireKeys(j, {"constraints"}, {"markers"}, "constraints");
  ConstraintSet cs;
  if (j.contains("markers")) cs.markers = j.at("markers").get<std::vector<std::string>>();
  for (const auto& e : j.at("constraints")) {
    std::string type = e.at("type").get<std::string>();
    if (type == "before") {
      requireKeys(e, {"type", "x", "y", "anchor"}, {}, "before");
      cs.items.push_back(BeforeC{parseNodeRef(e.at("x"), g, cs), parseNodeRef(e.at("y"), g, cs),
                                 parseNodeRef(e.at("anchor"), g, cs)});
    } else if (type == "in_interval") {
      requireKeys(e, {"type", "x", "interval"}, {"inside"}, "in_interval");
      cs.items.push_back(
          InIntervalC{parseNodeRef(e.at("x"), g, cs), parseInterval(e.at("interval"), g, cs), e.value("inside", true)});
    } else if (type == "edge_color") {
      requireKeys(e, {"type", "u", "v", "color"}, {"negated"}, "edge_color");
      cs.items.push_back(EdgeColorC{parseNodeRef(e.at("u"), g, cs), parseNodeRef(e.at("v"), g, cs),
                                    e.at("color").get<int>(), e.value("negated", false)});
    } else if (type == "cond_color_from") {
      requireKeys(e, {"type", "source", "interval", "color"}, {}, "cond_color_from");
      cs.items.push_back(CondColorFromC{parseNodeRef(e.at("source"), g, cs),
                                        parseInterval(e.at("interval"), g, cs), e.at("color").get<int>()});
    } else if (type == "exit_colored") {
      requireKeys(e, {"type", "interval", "color"}, {"exempt"}, "exit_colored");
      ExitColoredC xc;
      xc.iv = parseInterval(e.at("interval"), g, cs);
      if (e.contains("exempt"))
        for (const auto& r : e.at("exempt")) xc.exempt.push_back(parseNodeRef(r, g, cs));
      xc.color = e.at("color").get<int>();
      cs.items.push_back(std::move(xc));
    } else {
      throw Error(ErrorKind::ParseError, "constraints: unknown type \"" + type + "\"");
    }
  }
  return cs;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot open " + path + " for writing");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorKind::ParseError, "write failed: " + path);
}

}  // namespace bookemb
