#include "pemb/paren_sequence.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pemb {

namespace {

constexpr std::size_t kBlock = BitSequence::kBlockBits;
constexpr std::int32_t kEmptyLeaf = std::numeric_limits<std::int32_t>::max();

struct ByteExcess {
  std::array<std::int8_t, 256> total{};
  std::array<std::int8_t, 256> min_prefix{};  // min over the 8 prefix sums (k = 1..8)
};

constexpr ByteExcess make_byte_tables() {
  ByteExcess t;
  for (int v = 0; v < 256; ++v) {
    int e = 0, lo = 8;
    for (int k = 0; k < 8; ++k) {
      e += ((v >> k) & 1) ? -1 : 1;
      lo = std::min(lo, e);
    }
    t.total[v] = static_cast<std::int8_t>(e);
    t.min_prefix[v] = static_cast<std::int8_t>(lo);
  }
  return t;
}

constexpr ByteExcess kByte = make_byte_tables();

inline int step(const BitSequence& s, std::size_t position) {
  return s.bit(position - 1) ? -1 : 1;
}

// Byte holding positions x+1..x+8, x a multiple of 8.
inline unsigned byte_at(const BitSequence& s, std::size_t x) {
  return static_cast<unsigned>((s.bits().words()[x >> 6] >> (x & 63)) & 0xFF);
}

}  // namespace

std::size_t ParenSequence::scan_forward(std::size_t x, long long e, std::size_t limit,
                                        long long target) const {
  while (x < limit && (x & 7) != 0) {
    e += step(seq_, ++x);
    if (e <= target) return x;
  }
  while (x + 8 <= limit) {
    const unsigned byte = byte_at(seq_, x);
    if (e + kByte.min_prefix[byte] <= target) break;
    e += kByte.total[byte];
    x += 8;
  }
  while (x < limit) {
    e += step(seq_, ++x);
    if (e <= target) return x;
  }
  return npos;
}

std::size_t ParenSequence::scan_backward(std::size_t x, long long e, std::size_t limit,
                                         long long target) const {
  while (x > limit && (x & 7) != 0) {
    e -= step(seq_, x--);
    if (e <= target) return x;
  }
  while (x >= limit + 8) {
    const unsigned byte = byte_at(seq_, x - 8);
    const long long low = e - kByte.total[byte];
    if (std::min(low, low + kByte.min_prefix[byte]) <= target) break;
    e = low;
    x -= 8;
  }
  while (x > limit) {
    e -= step(seq_, x--);
    if (e <= target) return x;
  }
  return npos;
}

std::size_t ParenSequence::next_block(std::size_t block, long long target) const {
  std::size_t node = leaves_ + block;
  while (node > 1) {
    if ((node & 1) == 0 && min_tree_[node + 1] <= target) {
      node = node + 1;
      while (node < leaves_) node = min_tree_[2 * node] <= target ? 2 * node : 2 * node + 1;
      return node - leaves_;
    }
    node >>= 1;
  }
  return npos;
}

std::size_t ParenSequence::previous_block(std::size_t block, long long target) const {
  std::size_t node = leaves_ + block;
  while (node > 1) {
    if ((node & 1) == 1 && min_tree_[node - 1] <= target) {
      node = node - 1;
      while (node < leaves_) node = min_tree_[2 * node + 1] <= target ? 2 * node + 1 : 2 * node;
      return node - leaves_;
    }
    node >>= 1;
  }
  return npos;
}

std::size_t ParenSequence::forward_search(std::size_t from, long long target) const {
  const std::size_t length = size();
  if (from > length) return npos;
  const long long e = excess(from);
  if (e <= target) return from;
  if (from == length) return npos;
  const std::size_t block = from / kBlock;
  const std::size_t block_end = std::min((block + 1) * kBlock, length);
  if (auto hit = scan_forward(from, e, block_end, target); hit != npos) return hit;
  const std::size_t found = next_block(block, target);
  if (found == npos) return npos;
  const std::size_t start = found * kBlock;
  return scan_forward(start, excess(start), std::min(start + kBlock, length), target);
}

std::size_t ParenSequence::backward_search(std::size_t from, long long target) const {
  if (from > size()) return npos;
  const long long e = excess(from);
  if (e <= target) return from;
  if (from == 0) return npos;
  const std::size_t block = (from - 1) / kBlock;
  if (auto hit = scan_backward(from, e, block * kBlock, target); hit != npos) return hit;
  const std::size_t found = previous_block(block, target);
  if (found == npos) return 0 <= target ? 0 : npos;
  const std::size_t end = (found + 1) * kBlock;
  const long long end_excess = excess(end);
  if (end_excess <= target) return end;
  return scan_backward(end, end_excess, found * kBlock, target);
}

std::size_t ParenSequence::match(std::size_t i) const {
  if (i < 1 || i > size()) throw std::out_of_range("match: position out of range");
  if (is_open(i)) return forward_search(i, excess(i) - 1);
  return backward_search(i - 1, excess(i)) + 1;
}

std::size_t ParenSequence::parent(std::size_t v) const {
  if (v < 1 || v > nodes()) throw std::out_of_range("parent: node out of range");
  const std::size_t open = seq_.select0(v);
  const long long depth = excess(open - 1);
  if (depth == 0) return 0;
  const std::size_t x = backward_search(open - 1, depth - 1);
  return seq_.rank0(x + 1);
}

ParenSequence build_bp(BitArray bits, int threads) {
  if (threads < 1) throw std::invalid_argument("build_bp: threads must be >= 1");
  ParenSequence ps;
  ps.seq_ = build_rank_select(std::move(bits), threads);
  const std::size_t length = ps.seq_.size();
  if (2 * ps.seq_.ones() != length) throw std::invalid_argument("build_bp: unbalanced parentheses");

  const std::size_t blocks = (length + kBlock - 1) / kBlock;
  ps.leaves_ = 1;
  while (ps.leaves_ < std::max<std::size_t>(blocks, 1)) ps.leaves_ <<= 1;
  ps.min_tree_.resize(2 * ps.leaves_);
  auto& tree = ps.min_tree_;

#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t k = 0; k < ps.leaves_; ++k) {
    if (k >= blocks) {
      tree[ps.leaves_ + k] = kEmptyLeaf;
      continue;
    }
    std::size_t x = k * kBlock;
    const std::size_t end = std::min(x + kBlock, length);
    long long e = ps.excess(x);
    long long lo = kEmptyLeaf;
    while (x + 8 <= end) {
      const unsigned byte = byte_at(ps.seq_, x);
      lo = std::min(lo, e + kByte.min_prefix[byte]);
      e += kByte.total[byte];
      x += 8;
    }
    while (x < end) {
      e += step(ps.seq_, ++x);
      lo = std::min(lo, e);
    }
    tree[ps.leaves_ + k] = static_cast<std::int32_t>(lo);
  }
  for (std::size_t level = ps.leaves_ / 2; level >= 1; level /= 2) {
#pragma omp parallel for num_threads(threads) schedule(static) if (level >= 4096)
    for (std::size_t node = level; node < 2 * level; ++node) {
      tree[node] = std::min(tree[2 * node], tree[2 * node + 1]);
    }
  }
  if (blocks > 0 && tree[1] < 0) throw std::invalid_argument("build_bp: unbalanced parentheses");
  return ps;
}

}  // namespace pemb
