#pragma once

// Slow, obviously-correct references used by the tests.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pemb/embedding.hpp"
#include "pemb/spanning_tree.hpp"

namespace oracle {

using pemb::EdgeIndex;
using pemb::PlanarEmbedding;
using pemb::VertexId;

// Bits as a string of '0'/'1', positions 1-based in the helpers below.
std::size_t rank(const std::string& bits, char b, std::size_t i);
std::size_t select(const std::string& bits, char b, std::size_t j);  // 0 when j == 0, npos past the end

// Stack matching of a balanced string ('0' opens). 1-based positions.
std::vector<std::size_t> matches(const std::string& parens);
// Parent node (pre-order, 1-based, 0 for roots) of every node.
std::vector<std::size_t> parents(const std::string& parens);

std::string random_bits(std::size_t length, double density, std::mt19937_64& rng);
std::string random_balanced(std::size_t pairs, std::mt19937_64& rng);

// Recursive tour encoder written from the definitions.
struct Tour {
  std::string A, B, Bstar;
  std::vector<VertexId> label;        // input vertex -> pre-order id
  std::vector<VertexId> tick_vertex;  // tick -> pre-order id of its vertex (slot 0 unused)
  std::vector<EdgeIndex> tick_edge;   // tick -> E_G index
  std::vector<std::size_t> edge_tick; // E_G index -> tick
};
Tour encode(const PlanarEmbedding& g, const pemb::ParentEdges& parents);

// Recursive ccw DFS: each vertex scans from the edge after the one it was
// reached through and descends into unvisited neighbours at once.
pemb::ParentEdges dfs_parents(const PlanarEmbedding& g, VertexId root);

// Builds a simple-graph embedding from ccw neighbour lists (index 0 unused).
PlanarEmbedding from_rotations(const std::vector<std::vector<VertexId>>& rotations);

PlanarEmbedding single_edge();
PlanarEmbedding triangle();
PlanarEmbedding k4();
PlanarEmbedding path(std::size_t n);
PlanarEmbedding star(std::size_t leaves);
PlanarEmbedding cycle(std::size_t n);

// Orbits of the face permutation of g, each a list of E_G indices.
std::vector<std::vector<EdgeIndex>> face_orbits(const PlanarEmbedding& g);

// Runs fn on a thread with a 1 GiB stack so the recursive oracles can walk
// deep trees; rethrows whatever fn throws.
void with_large_stack(const std::function<void()>& fn);

// True when b is a cyclic rotation of a.
bool cyclic_equal(const std::vector<VertexId>& a, const std::vector<VertexId>& b);

}  // namespace oracle
