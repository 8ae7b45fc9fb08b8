#include "pemb/bit_sequence.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>

#include "pemb/parallel.hpp"

namespace pemb {

namespace {

constexpr std::size_t kWordsPerBlock = BitSequence::kBlockBits / 64;

// Position (0-based) of the r-th set bit of w, r >= 1.
unsigned select_in_word(std::uint64_t w, std::size_t r) {
  for (std::size_t k = 1; k < r; ++k) w &= w - 1;
  return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

BitArray BitArray::from_string(std::string_view bits) {
  BitArray out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') out.set(i);
    else if (bits[i] != '0') throw std::invalid_argument("bit string may only contain 0 and 1");
  }
  return out;
}

void BitArray::set_atomic(std::size_t i) noexcept {
  std::atomic_ref<std::uint64_t> word(words_[i >> 6]);
  word.fetch_or(std::uint64_t{1} << (i & 63), std::memory_order_relaxed);
}

void BitArray::push_back(bool value) {
  if ((length_ & 63) == 0) words_.push_back(0);
  if (value) set(length_);
  ++length_;
}

std::string BitArray::to_string() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) out[i] = get(i) ? '1' : '0';
  return out;
}

bool BitSequence::access(std::size_t i) const {
  if (i < 1 || i > size()) throw std::out_of_range("access: position out of range");
  return bits_.get(i - 1);
}

std::size_t BitSequence::rank1(std::size_t i) const {
  if (i > size()) throw std::out_of_range("rank: position out of range");
  const std::size_t block = i / kBlockBits;
  std::size_t count = block_rank_[block];
  const auto words = bits_.words();
  const std::size_t word_end = i / 64;
  for (std::size_t w = block * kWordsPerBlock; w < word_end; ++w) count += std::popcount(words[w]);
  if (const auto tail = i & 63; tail != 0) {
    count += std::popcount(words[word_end] & ((std::uint64_t{1} << tail) - 1));
  }
  return count;
}

std::size_t BitSequence::block_count(bool b, std::size_t block) const {
  // b-bits before `block`; padding past size() is never reached by callers.
  const std::size_t ones_before = block_rank_[block];
  return b ? ones_before : std::min(block * kBlockBits, size()) - ones_before;
}

std::size_t BitSequence::select_in_blocks(bool b, std::size_t j) const {
  const auto& hints = b ? select1_hint_ : select0_hint_;
  const std::size_t sample = (j - 1) / kSelectSample;
  const std::size_t blocks = block_rank_.size() - 1;
  std::size_t lo = hints[sample];
  std::size_t hi = sample + 1 < hints.size() ? hints[sample + 1] : blocks - 1;
  // Largest block in [lo, hi] with fewer than j b-bits before it.
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (block_count(b, mid) < j) lo = mid;
    else hi = mid - 1;
  }
  std::size_t remaining = j - block_count(b, lo);
  const auto words = bits_.words();
  for (std::size_t w = lo * kWordsPerBlock;; ++w) {
    const std::uint64_t word = b ? words[w] : ~words[w];
    const auto count = static_cast<std::size_t>(std::popcount(word));
    if (remaining <= count) return w * 64 + select_in_word(word, remaining) + 1;
    remaining -= count;
  }
}

std::size_t BitSequence::select1(std::size_t j) const {
  if (j == 0) return 0;
  if (j > ones()) throw std::out_of_range("select1: occurrence out of range");
  return select_in_blocks(true, j);
}

std::size_t BitSequence::select0(std::size_t j) const {
  if (j == 0) return 0;
  if (j > size() - ones()) throw std::out_of_range("select0: occurrence out of range");
  return select_in_blocks(false, j);
}

std::size_t BitSequence::support_bits() const noexcept {
  return 64 * block_rank_.size() + 32 * (select1_hint_.size() + select0_hint_.size());
}

std::size_t BitSequence::heap_size() const noexcept {
  return bits_.words().size() * sizeof(std::uint64_t) + heap_bytes(block_rank_) +
         heap_bytes(select1_hint_) + heap_bytes(select0_hint_);
}

BitSequence build_rank_select(BitArray bits, int threads) {
  if (threads < 1) throw std::invalid_argument("build_rank_select: threads must be >= 1");
  BitSequence seq;
  const std::size_t length = bits.size();
  const std::size_t blocks = (length + BitSequence::kBlockBits - 1) / BitSequence::kBlockBits;
  const auto words = bits.words();

  // Per-block popcounts, then an exclusive scan over blocks.
  seq.block_rank_.resize(blocks + 1);
  std::vector<std::uint64_t> counts(blocks);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t w_end = std::min(words.size(), (k + 1) * kWordsPerBlock);
    std::uint64_t c = 0;
    for (std::size_t w = k * kWordsPerBlock; w < w_end; ++w) c += std::popcount(words[w]);
    counts[k] = c;
  }
  const auto offsets = prefix_sum(counts, threads);
  const std::uint64_t ones = blocks == 0 ? 0 : offsets.back() + counts.back();
  std::copy(offsets.begin(), offsets.end(), seq.block_rank_.begin());
  seq.block_rank_[blocks] = ones;

  const std::size_t zeros = length - ones;
  const auto samples = [](std::size_t occurrences) {
    return (occurrences + BitSequence::kSelectSample - 1) / BitSequence::kSelectSample;
  };
  seq.select1_hint_.resize(samples(ones));
  seq.select0_hint_.resize(samples(zeros));

  // Each sample k falls in exactly one block, so writes are disjoint.
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t ones_lo = seq.block_rank_[k], ones_hi = seq.block_rank_[k + 1];
    for (std::size_t s = (ones_lo + BitSequence::kSelectSample - 1) / BitSequence::kSelectSample;
         s * BitSequence::kSelectSample < ones_hi; ++s) {
      seq.select1_hint_[s] = static_cast<std::uint32_t>(k);
    }
    const std::size_t zeros_lo = k * BitSequence::kBlockBits - ones_lo;
    const std::size_t zeros_hi = std::min((k + 1) * BitSequence::kBlockBits, length) - ones_hi;
    for (std::size_t s = (zeros_lo + BitSequence::kSelectSample - 1) / BitSequence::kSelectSample;
         s * BitSequence::kSelectSample < zeros_hi; ++s) {
      seq.select0_hint_[s] = static_cast<std::uint32_t>(k);
    }
  }

  seq.bits_ = std::move(bits);
  return seq;
}

}  // namespace pemb
