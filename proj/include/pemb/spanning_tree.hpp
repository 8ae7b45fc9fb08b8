#pragma once

#include <cstddef>
#include <cstdint>

#include "pemb/bit_sequence.hpp"
#include "pemb/embedding.hpp"
#include "pemb/memory.hpp"

namespace pemb {

// Parent references of a rooted spanning tree: for each vertex v (1-based
// index), the E_G position of the edge v -> parent(v); kNoEdge for the root.
using ParentEdges = tracked_vector<EdgeIndex>;

// Rooted spanning tree T of an embedding together with its adjacency arrays.
//  - edges (E_T): 2(n-1) tree half-edges, grouped by src; non-root groups
//    start with the parent edge, then follow the ccw order of E_G. The root
//    group starts at its first tree edge in E_G order. cmp indexes E_T.
//  - ref[j]: E_G position of E_T[j].
//  - gaps[j] (the C array): number of non-tree edges that follow ref[j]
//    ccw around its source, cyclically, before the next tree edge.
//  - tree_mark: one bit per E_G edge, 1 for tree edges, with rank/select.
struct SpanningTreeData {
  VertexId root = kNoVertex;
  tracked_vector<VertexId> parents;  // parents[v], 0 for the root
  ParentEdges parent_edge;
  BitSequence tree_mark;
  tracked_vector<DirectedEdge> edges;
  tracked_vector<VertexRange> vertices;
  tracked_vector<EdgeIndex> ref;
  tracked_vector<std::uint32_t> gaps;

  bool is_leaf(VertexId v) const { return v != root && vertices[v].first == vertices[v].last; }
  std::size_t heap_size() const;
};

// Depth-first tree from `root`: each vertex scans its edges ccw starting
// after the edge it was reached through (the root starts at its first edge)
// and descends into every unvisited neighbour immediately.
ParentEdges sequential_dfs_parents(const PlanarEmbedding& g, VertexId root);
SpanningTreeData sequential_dfs_tree(const PlanarEmbedding& g, VertexId root);

// Stub tree plus per-thread DFS with work stealing and an atomic claim per
// vertex. With deterministic = true the result equals sequential_dfs_parents.
ParentEdges parallel_spanning_tree(const PlanarEmbedding& g, VertexId root, int threads,
                                   bool deterministic);

// Throws std::invalid_argument unless `parents` describes a spanning tree of g.
VertexId check_spanning_tree(const PlanarEmbedding& g, const ParentEdges& parents);

tracked_vector<VertexId> parent_vertices(const PlanarEmbedding& g, const ParentEdges& parents);

SpanningTreeData build_tree_adjacency(const PlanarEmbedding& g, ParentEdges parents, int threads);

}  // namespace pemb
