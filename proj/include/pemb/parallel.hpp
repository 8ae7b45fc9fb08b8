#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pemb/memory.hpp"

namespace pemb {

// Half-open slice [begin, end) of a static chunking of `total` items over
// `parts` workers. The last worker absorbs the remainder.
struct Chunk {
  std::size_t begin;
  std::size_t end;
};

constexpr Chunk static_chunk(std::size_t total, std::size_t parts, std::size_t index) noexcept {
  const std::size_t size = total / parts;
  const std::size_t begin = index * size;
  return {begin, index + 1 == parts ? total : begin + size};
}

// Threads to use when the caller asked for `requested`; 0 picks
// PEMB_THREADS or, failing that, the hardware concurrency.
int resolve_threads(int requested);

int hardware_threads();

// Exclusive prefix sums: out[i] = sum of values[0..i). Fork-join over
// `threads` static chunks; the result does not depend on `threads`.
std::vector<std::uint64_t> prefix_sum(std::span<const std::uint64_t> values, int threads);

// In-place variant over 32-bit counters, used for the tree adjacency offsets.
// Returns the grand total.
std::uint64_t exclusive_scan_inplace(std::span<std::uint32_t> values, int threads);

}  // namespace pemb
