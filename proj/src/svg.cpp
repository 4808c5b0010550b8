#include "bookemb/svg.h"

#include <algorithm>

namespace bookemb {

namespace {

struct Style {
  const char* stroke;
  const char* dash;  // empty = solid
};

// pages 1..3 follow the red-dashed / blue-solid / green-dotted convention;
// beyond that the palette cycles with rotating dash patterns
Style styleFor(int page) {
  static const char* colors[6] = {"#cc0000", "#0000cc", "#008800", "#aa00aa", "#cc7700", "#008888"};
  static const char* dashes[3] = {"8,5", "", "2,4"};
  int i = page - 1;
  return {colors[i % 6], dashes[i % 3]};
}

}  // namespace

std::string renderArcDiagram(const Graph& g, const BookEmbedding& emb) {
  ValidationReport rep = validateEmbedding(g, emb);
  if (!rep.clean()) throw Error(ErrorKind::ShapeMismatch, "refusing to draw an invalid embedding");
  uint32_t n = g.nodeCount();
  const int spacing = 40, margin = 30, r = 4;
  auto xOf = [&](uint32_t pos) { return margin + int(pos) * spacing; };
  int maxSpan = 0;
  for (const auto& e : g.edges()) {
    int span = std::abs(int(emb.layout.pos[e.u]) - int(emb.layout.pos[e.v]));
    maxSpan = std::max(maxSpan, span);
  }
  int top = maxSpan * spacing / 2 + margin;
  int width = (n > 0 ? xOf(n - 1) : margin) + margin;
  int height = top + 2 * margin;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
       std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
       "\">\n";
  s += "  <line x1=\"" + std::to_string(margin / 2) + "\" y1=\"" + std::to_string(top) + "\" x2=\"" +
       std::to_string(width - margin / 2) + "\" y2=\"" + std::to_string(top) +
       "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  // arcs sorted by (page, edge index) so output is stable
  std::vector<uint32_t> idx(g.edges().size());
  for (uint32_t i = 0; i < idx.size(); i++) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    if (emb.pages.page[a] != emb.pages.page[b]) return emb.pages.page[a] < emb.pages.page[b];
    return a < b;
  });
  for (uint32_t ei : idx) {
    const Edge& e = g.edges()[ei];
    int p1 = int(emb.layout.pos[e.u]), p2 = int(emb.layout.pos[e.v]);
    int xa = xOf(uint32_t(std::min(p1, p2))), xb = xOf(uint32_t(std::max(p1, p2)));
    int rad = (xb - xa) / 2;
    Style st = styleFor(emb.pages.page[ei]);
    s += "  <path d=\"M " + std::to_string(xa) + " " + std::to_string(top) + " A " + std::to_string(rad) +
         " " + std::to_string(rad) + " 0 0 1 " + std::to_string(xb) + " " + std::to_string(top) +
         "\" fill=\"none\" stroke=\"" + st.stroke + "\" stroke-width=\"2\"";
    if (st.dash[0] != '\0') s += " stroke-dasharray=\"" + std::string(st.dash) + "\"";
    s += " data-page=\"" + std::to_string(emb.pages.page[ei]) + "\" data-edge=\"" + std::to_string(e.u) +
         "-" + std::to_string(e.v) + "\"/>\n";
  }
  for (uint32_t pos = 0; pos < n; pos++) {
    NodeId v = emb.layout.order[pos];
    int x = xOf(pos);
    s += "  <circle cx=\"" + std::to_string(x) + "\" cy=\"" + std::to_string(top) + "\" r=\"" +
         std::to_string(r) + "\" fill=\"#000000\"/>\n";
    s += "  <text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(top + 18) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" + std::to_string(v) +
         "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace bookemb
