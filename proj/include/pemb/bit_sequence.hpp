#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "pemb/memory.hpp"

namespace pemb {

// Plain packed bits, LSB-first within 64-bit words; 0-based.
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(std::size_t length) : words_((length + 63) / 64, 0), length_(length) {}

  static BitArray from_string(std::string_view bits);

  std::size_t size() const noexcept { return length_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void assign(std::size_t i, bool value) noexcept {
    const auto mask = std::uint64_t{1} << (i & 63);
    words_[i >> 6] = value ? (words_[i >> 6] | mask) : (words_[i >> 6] & ~mask);
  }
  // Safe under concurrent writers touching the same word.
  void set_atomic(std::size_t i) noexcept;
  void push_back(bool value);

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  std::string to_string() const;

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  tracked_vector<std::uint64_t> words_;
  std::size_t length_ = 0;
};

// Bit sequence with rank/select support. Public positions are 1-based:
// access(i) for i in 1..L, rank(b, i) counts b-bits among the first i,
// select(b, j) is the position of the j-th b-bit with select(b, 0) = 0.
class BitSequence {
 public:
  static constexpr std::size_t kBlockBits = 512;
  static constexpr std::size_t kSelectSample = 4096;

  BitSequence() = default;

  std::size_t size() const noexcept { return bits_.size(); }
  bool access(std::size_t i) const;
  std::size_t rank1(std::size_t i) const;
  std::size_t rank0(std::size_t i) const { return i - rank1(i); }
  std::size_t rank(bool b, std::size_t i) const { return b ? rank1(i) : rank0(i); }
  std::size_t select1(std::size_t j) const;
  std::size_t select0(std::size_t j) const;
  std::size_t select(bool b, std::size_t j) const { return b ? select1(j) : select0(j); }

  std::size_t ones() const noexcept { return block_rank_.empty() ? 0 : block_rank_.back(); }

  const BitArray& bits() const noexcept { return bits_; }
  // 0-based unchecked read for internal scans.
  bool bit(std::size_t i) const noexcept { return bits_.get(i); }

  std::size_t payload_bits() const noexcept { return bits_.size(); }
  // Bits held by the rank and select directories.
  std::size_t support_bits() const noexcept;
  // Heap bytes of payload words plus directories.
  std::size_t heap_size() const noexcept;

  friend BitSequence build_rank_select(BitArray bits, int threads);

 private:
  std::size_t select_in_blocks(bool b, std::size_t j) const;
  std::size_t block_count(bool b, std::size_t block) const;

  BitArray bits_;
  tracked_vector<std::uint64_t> block_rank_;  // ones before each 512-bit block, plus total
  tracked_vector<std::uint32_t> select1_hint_;  // block holding occurrence k*4096+1
  tracked_vector<std::uint32_t> select0_hint_;
};

BitSequence build_rank_select(BitArray bits, int threads);

}  // namespace pemb
