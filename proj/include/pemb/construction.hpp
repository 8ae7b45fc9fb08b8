#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "pemb/bit_sequence.hpp"
#include "pemb/embedding.hpp"
#include "pemb/paren_sequence.hpp"
#include "pemb/spanning_tree.hpp"

namespace pemb {

// Compact representation of a planar embedding in 4m payload bits:
//  A  (2m bits): 1 for each tree-edge tick, 0 for each non-tree tick;
//  B  (2n-2):    parentheses of the spanning tree;
//  B* (2(m-n+1)): parentheses of the complementary dual tree.
struct CompactEmbedding {
  std::size_t n = 0;
  std::size_t m = 0;
  BitSequence A;
  ParenSequence B;
  ParenSequence Bstar;

  std::size_t payload_bits() const noexcept {
    return A.payload_bits() + B.payload_bits() + Bstar.payload_bits();
  }
  std::size_t support_bits() const noexcept {
    return A.support_bits() + B.support_bits() + Bstar.support_bits();
  }
  std::size_t heap_size() const noexcept { return A.heap_size() + B.heap_size() + Bstar.heap_size(); }
};

// One tree-edge traversal of the Euler tour. rank_a/rank_b carry weights
// before list ranking and ranks after it.
struct EulerEntry {
  std::uint32_t succ;
  std::uint32_t rank_a;
  std::uint32_t rank_b;
  std::uint8_t value;  // 0 forward (open), 1 backward (close)
};

// Replaces rank_a/rank_b by inclusive prefix sums of the weights along the
// successor cycle, starting at `head` (the cycle is cut just before it).
// Sublist sampling with 8 * threads splitters. Throws std::invalid_argument
// when the successors do not form one cycle over all entries.
void list_ranking(std::span<EulerEntry> entries, std::size_t head, int threads);

// Wall-clock seconds per construction phase.
struct PhaseTimings {
  double euler = 0;
  double list_rank = 0;
  double scatter = 0;
  double bstar = 0;
  double support = 0;
};

// Serial reference: walks the tour from the root's first edge and appends
// bits as edges are met. The walk is reported under `euler`.
CompactEmbedding sequential_build(const PlanarEmbedding& g, const SpanningTreeData& t, VertexId init,
                                  PhaseTimings* timings = nullptr);

// Parallel construction over an Euler-tour list; bit-identical to
// sequential_build for every thread count.
CompactEmbedding build_compact(const PlanarEmbedding& g, const SpanningTreeData& t, VertexId init,
                               int threads, PhaseTimings* timings = nullptr);

// PEMB1 container: magic, n and m as 64-bit little endian, then A, B, B*
// packed LSB-first into 64-bit little-endian words. Support structures are
// rebuilt on load.
std::string serialize_compact(const CompactEmbedding& c);
CompactEmbedding deserialize_compact(std::string_view bytes, int threads);
void save_compact(const CompactEmbedding& c, const std::filesystem::path& path);
CompactEmbedding load_compact(const std::filesystem::path& path, int threads);

}  // namespace pemb
