#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pemb/construction.hpp"

namespace pemb {

// A tick is the position in A (1..2m) of one processed edge occurrence.
using Tick = std::size_t;

// First tick processed while visiting v.
Tick first(const CompactEmbedding& c, VertexId v);
// Next tick around the same vertex in ccw order; nullopt after the last one.
std::optional<Tick> next(const CompactEmbedding& c, Tick i);
// The other tick of the same edge.
Tick mate(const CompactEmbedding& c, Tick i);
// Vertex being visited when tick i is processed.
VertexId vertex(const CompactEmbedding& c, Tick i);

std::size_t counting(const CompactEmbedding& c, VertexId v);
// Neighbours of v in ccw order, starting at first(v).
std::vector<VertexId> listing(const CompactEmbedding& c, VertexId v);
// Vertices of the face that contains tick e, starting with vertex(e) and
// walking mate-then-next; next wraps to the first tick of the vertex.
std::vector<VertexId> face(const CompactEmbedding& c, Tick e);

// Tick of the face walk that follows e.
Tick face_successor(const CompactEmbedding& c, Tick e);

// Convenience: the k-th neighbour (0-based) of v in listing order.
VertexId neighbor(const CompactEmbedding& c, VertexId v, std::size_t k);

}  // namespace pemb
