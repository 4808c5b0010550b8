#include "bookemb/embedding.h"

#include <algorithm>
#include <deque>
#include <random>

namespace bookemb {

Layout Layout::fromOrder(std::vector<NodeId> order) {
  Layout l;
  l.pos.assign(order.size(), 0);
  std::vector<bool> seen(order.size(), false);
  for (uint32_t i = 0; i < order.size(); i++) {
    NodeId v = order[i];
    if (v >= order.size() || seen[v])
      throw Error(ErrorKind::ShapeMismatch, "order is not a permutation of 0..n-1");
    seen[v] = true;
    l.pos[v] = i;
  }
  l.order = std::move(order);
  return l;
}

bool cyclicallyOrdered(NodeId a, NodeId b, NodeId c, const Layout& layout) {
  uint32_t pa = layout.pos[a], pb = layout.pos[b], pc = layout.pos[c];
  // b strictly inside the arc from a to c in increasing-position direction
  if (pa < pc) return pa < pb && pb < pc;
  return pb > pa || pb < pc;
}

bool conflicts(const Edge& e1, const Edge& e2, const Layout& layout) {
  if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) return false;
  // chords cross iff exactly one endpoint of e2 lies on the arc (e1.u -> e1.v)
  return cyclicallyOrdered(e1.u, e2.u, e1.v, layout) != cyclicallyOrdered(e1.u, e2.v, e1.v, layout);
}

bool exitsInterval(const Edge& e, NodeId a, NodeId b, const Layout& layout) {
  if (e.u == a || e.u == b || e.v == a || e.v == b) return false;
  return cyclicallyOrdered(a, e.u, b, layout) != cyclicallyOrdered(a, e.v, b, layout);
}

ValidationReport validateEmbedding(const Graph& graph, const BookEmbedding& emb) {
  const auto& edges = graph.edges();
  if (emb.layout.order.size() != graph.nodeCount())
    throw Error(ErrorKind::ShapeMismatch, "layout covers " + std::to_string(emb.layout.order.size()) +
                                              " nodes, graph has " + std::to_string(graph.nodeCount()));
  if (emb.pages.page.size() != edges.size())
    throw Error(ErrorKind::ShapeMismatch, "page assignment covers " + std::to_string(emb.pages.page.size()) +
                                              " edges, graph has " + std::to_string(edges.size()));
  ValidationReport rep;
  for (size_t i = 0; i < edges.size(); i++) {
    int p = emb.pages.page[i];
    if (p < 1 || p > emb.k)
      rep.error("edge (" + std::to_string(edges[i].u) + "," + std::to_string(edges[i].v) + ") has page " +
                std::to_string(p) + " outside 1.." + std::to_string(emb.k));
  }
  for (size_t i = 0; i < edges.size(); i++) {
    for (size_t j = i + 1; j < edges.size(); j++) {
      if (emb.pages.page[i] != emb.pages.page[j]) continue;
      if (conflicts(edges[i], edges[j], emb.layout)) {
        rep.error("edges (" + std::to_string(edges[i].u) + "," + std::to_string(edges[i].v) + ") and (" +
                  std::to_string(edges[j].u) + "," + std::to_string(edges[j].v) + ") conflict on page " +
                  std::to_string(emb.pages.page[i]));
      }
    }
  }
  return rep;
}

BookEmbedding canonicalize(const BookEmbedding& emb) {
  const auto& order = emb.layout.order;
  uint32_t n = uint32_t(order.size());
  BookEmbedding out = emb;
  if (n == 0) return out;
  uint32_t z = emb.layout.pos[0];
  std::vector<NodeId> fwd(n), rev(n);
  for (uint32_t i = 0; i < n; i++) {
    fwd[i] = order[(z + i) % n];
    rev[i] = order[(z + n - i) % n];
  }
  out.layout = Layout::fromOrder(n >= 2 && rev[1] < fwd[1] ? rev : fwd);
  return out;
}

std::optional<std::vector<NodeId>> monochromaticPath(const Graph& graph, const BookEmbedding& emb, NodeId a,
                                                     NodeId b, int color) {
  uint32_t n = graph.nodeCount();
  std::vector<std::vector<NodeId>> adj(n);
  const auto& edges = graph.edges();
  for (size_t i = 0; i < edges.size(); i++) {
    if (emb.pages.page[i] != color) continue;
    adj[edges[i].u].push_back(edges[i].v);
    adj[edges[i].v].push_back(edges[i].u);
  }
  std::vector<int64_t> parent(n, -2);
  std::deque<NodeId> queue{a};
  parent[a] = -1;
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    if (x == b) break;
    for (NodeId y : adj[x]) {
      if (parent[y] == -2) {
        parent[y] = x;
        queue.push_back(y);
      }
    }
  }
  if (parent[b] == -2) return std::nullopt;
  std::vector<NodeId> path;
  for (int64_t x = b; x != -1; x = parent[x]) path.push_back(NodeId(x));
  std::reverse(path.begin(), path.end());
  return path;
}

ValidationReport checkProposition1(const Graph& graph, const BookEmbedding& emb, uint64_t sampleSeed) {
  ValidationReport rep;
  uint32_t n = graph.nodeCount();
  if (n < 2) return rep;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (n <= 12) {
    for (NodeId a = 0; a < n; a++)
      for (NodeId b = a + 1; b < n; b++) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(sampleSeed);
    std::uniform_int_distribution<uint32_t> pick(0, n - 1);
    for (int t = 0; t < 200; t++) {
      NodeId a = pick(rng), b = pick(rng);
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  const auto& edges = graph.edges();
  for (auto [a, b] : pairs) {
    std::vector<std::optional<std::vector<NodeId>>> paths(emb.k + 1);
    for (int c = 1; c <= emb.k; c++) {
      paths[c] = monochromaticPath(graph, emb, a, b, c);
      if (!paths[c]) continue;
      std::vector<bool> onPath(n, false);
      for (NodeId v : *paths[c]) onPath[v] = true;
      for (size_t i = 0; i < edges.size(); i++) {
        if (emb.pages.page[i] != c) continue;
        if (onPath[edges[i].u] || onPath[edges[i].v]) continue;
        if (exitsInterval(edges[i], a, b, emb.layout)) {
          rep.error("color-" + std::to_string(c) + " edge (" + std::to_string(edges[i].u) + "," +
                    std::to_string(edges[i].v) + ") exits (" + std::to_string(a) + "," + std::to_string(b) +
                    ") despite a color-" + std::to_string(c) + " path");
        }
      }
    }
    if (emb.k >= 3 && paths[1] && paths[2] && paths[3]) {
      std::vector<bool> onAny(n, false);
      for (int c = 1; c <= 3; c++)
        for (NodeId v : *paths[c]) onAny[v] = true;
      for (size_t i = 0; i < edges.size(); i++) {
        if (onAny[edges[i].u] || onAny[edges[i].v]) continue;
        if (exitsInterval(edges[i], a, b, emb.layout))
          rep.error("edge (" + std::to_string(edges[i].u) + "," + std::to_string(edges[i].v) +
                    ") exits (" + std::to_string(a) + "," + std::to_string(b) + ") despite 3-color paths");
      }
      // components of G minus the three paths stay on one side
      auto adj = graph.adjacency();
      std::vector<int> comp(n, -1);
      int nc = 0;
      for (NodeId s = 0; s < n; s++) {
        if (onAny[s] || comp[s] >= 0) continue;
        std::deque<NodeId> queue{s};
        comp[s] = nc;
        while (!queue.empty()) {
          NodeId x = queue.front();
          queue.pop_front();
          for (NodeId y : adj[x]) {
            if (!onAny[y] && comp[y] < 0) {
              comp[y] = nc;
              queue.push_back(y);
            }
          }
        }
        nc++;
      }
      std::vector<int> side(nc, -1);
      for (NodeId v = 0; v < n; v++) {
        if (comp[v] < 0) continue;
        int s = cyclicallyOrdered(a, v, b, emb.layout) ? 1 : 0;
        if (side[comp[v]] == -1) {
          side[comp[v]] = s;
        } else if (side[comp[v]] != s) {
          rep.error("component of node " + std::to_string(v) + " straddles interval (" + std::to_string(a) +
                    "," + std::to_string(b) + ") despite 3-color paths");
        }
      }
    }
  }
  return rep;
}

}  // namespace bookemb
