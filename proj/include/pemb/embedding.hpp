#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pemb/memory.hpp"

namespace pemb {

// 1-based vertex identifier; 0 is reserved for "no vertex".
using VertexId = std::uint32_t;
// 0-based position in a directed-edge array.
using EdgeIndex = std::uint32_t;

inline constexpr VertexId kNoVertex = 0;
inline constexpr EdgeIndex kNoEdge = static_cast<EdgeIndex>(-1);

struct DirectedEdge {
  VertexId src;
  VertexId tgt;
  EdgeIndex cmp;  // position of the complement (twin) edge

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Inclusive range [first, last] of a vertex's edges.
struct VertexRange {
  EdgeIndex first;
  EdgeIndex last;

  friend bool operator==(const VertexRange&, const VertexRange&) = default;
};

// Rotation system of a connected planar multigraph. Edges are grouped by
// source vertex, each group in counterclockwise order. Vertex 1 is on the
// outer face. vertices[0] is unused; vertex ids index directly.
struct PlanarEmbedding {
  std::size_t n = 0;
  std::size_t m = 0;
  tracked_vector<VertexRange> vertices;
  tracked_vector<DirectedEdge> edges;

  const VertexRange& range(VertexId v) const { return vertices[v]; }
  std::size_t degree(VertexId v) const { return vertices[v].last - vertices[v].first + 1; }

  // Counterclockwise successor of e around e.src, wrapping inside the group.
  EdgeIndex next_ccw(EdgeIndex e) const {
    const auto& r = vertices[edges[e].src];
    return e == r.last ? r.first : e + 1;
  }

  // Successor of e on its face: the ccw successor of the twin around e.tgt.
  EdgeIndex face_successor(EdgeIndex e) const { return next_ccw(edges[e].cmp); }

  // Bytes of the adjacency-list representation (edge and vertex arrays).
  std::size_t adjacency_bytes() const {
    return edges.size() * sizeof(DirectedEdge) + (vertices.size() - 1) * sizeof(VertexRange);
  }

  friend bool operator==(const PlanarEmbedding&, const PlanarEmbedding&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class ViolationKind {
  kBadVertexRange,
  kDanglingTwin,
  kTwinIsSelf,
  kNonInvolutiveTwin,
  kTwinEndpointMismatch,
  kDisconnected,
  kEulerFormula,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::string_view to_string(ViolationKind kind);

// Every violated invariant of g; empty iff g is a valid connected planar
// embedding. Euler's formula is checked over face orbits, so a
// non-planar rotation system (positive genus) is reported here.
std::vector<Violation> validate(const PlanarEmbedding& g);

// Number of orbits of the face-successor permutation. Requires a valid twin
// involution and vertex partition.
std::size_t count_faces(const PlanarEmbedding& g);

// .pg text format: header `pg <n> <m>`, then 2m lines `<src> <tgt> <cmp>`
// (1-based, grouped by src in ascending order, ccw inside each group).
// Lines starting with '#' are ignored. Throws ParseError.
PlanarEmbedding parse_embedding(std::string_view text);
std::string write_embedding(const PlanarEmbedding& g);

PlanarEmbedding read_embedding_file(const std::filesystem::path& path);
void write_embedding_file(const PlanarEmbedding& g, const std::filesystem::path& path);

// Derives the vertex ranges of an edge array already grouped by ascending
// src. Throws std::invalid_argument if a vertex has no edges.
PlanarEmbedding embedding_from_edges(std::size_t n, tracked_vector<DirectedEdge> edges);

// side x side grid with one pseudo-random diagonal per cell.
// n = side^2, m = (side-1)(3 side-1). Vertex 1 is the corner (0,0).
PlanarEmbedding generate_grid_triangulation(std::size_t side, std::uint64_t seed);

// Closed forms for the generator, used by callers sizing inputs.
constexpr std::size_t grid_vertices(std::size_t side) { return side * side; }
constexpr std::size_t grid_edges(std::size_t side) { return (side - 1) * (3 * side - 1); }

}  // namespace pemb
