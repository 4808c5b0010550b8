#pragma once

#include <string>

#include "bookemb/embedding.h"
#include "bookemb/graph.h"

namespace bookemb {

/// Deterministic arc diagram: nodes on a horizontal spine in layout order,
/// one semicircular arc per edge above the spine. Page 1 is red dashed,
/// page 2 solid blue, page 3 dotted green; higher pages cycle the palette.
std::string renderArcDiagram(const Graph& g, const BookEmbedding& emb);

}  // namespace bookemb
