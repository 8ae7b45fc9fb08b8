#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "pemb/bit_sequence.hpp"

namespace pemb {

// Balanced parentheses over a bit sequence, 0 = open and 1 = close.
// Positions are 1-based; nodes are numbered by the pre-order of their
// opening parenthesis (node v opens at select0(v)).
//
// Directory: for every 512-bit block the minimum prefix excess inside it,
// arranged as a complete binary min-tree, so match and parent do one
// in-block scan, a logarithmic tree walk, and one more in-block scan.
class ParenSequence {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  ParenSequence() = default;

  std::size_t size() const noexcept { return seq_.size(); }
  std::size_t nodes() const noexcept { return seq_.size() / 2; }

  const BitSequence& bits() const noexcept { return seq_; }
  bool access(std::size_t i) const { return seq_.access(i); }
  bool is_open(std::size_t i) const { return !seq_.access(i); }

  // Opens minus closes among the first i parentheses.
  long long excess(std::size_t i) const {
    return static_cast<long long>(i) - 2 * static_cast<long long>(seq_.rank1(i));
  }

  std::size_t match(std::size_t i) const;
  // Parent node of node v, 0 when v is outermost.
  std::size_t parent(std::size_t v) const;

  // Smallest x >= from with excess(x) <= target, or npos.
  std::size_t forward_search(std::size_t from, long long target) const;
  // Largest x <= from with excess(x) <= target, or npos.
  std::size_t backward_search(std::size_t from, long long target) const;

  std::size_t payload_bits() const noexcept { return seq_.payload_bits(); }
  std::size_t support_bits() const noexcept { return seq_.support_bits() + 32 * min_tree_.size(); }
  std::size_t heap_size() const noexcept { return seq_.heap_size() + heap_bytes(min_tree_); }

  friend ParenSequence build_bp(BitArray bits, int threads);

 private:
  std::size_t scan_forward(std::size_t x, long long e, std::size_t limit, long long target) const;
  std::size_t scan_backward(std::size_t x, long long e, std::size_t limit, long long target) const;
  std::size_t next_block(std::size_t block, long long target) const;
  std::size_t previous_block(std::size_t block, long long target) const;

  BitSequence seq_;
  std::size_t leaves_ = 0;                // power of two >= block count
  tracked_vector<std::int32_t> min_tree_;  // 1-based heap layout, leaves at [leaves_, 2 leaves_)
};

// Throws std::invalid_argument when bits are not balanced.
ParenSequence build_bp(BitArray bits, int threads);

}  // namespace pemb
