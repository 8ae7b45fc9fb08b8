#include "pemb/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace pemb {

namespace {

template <class T, class Out>
std::uint64_t blocked_scan(std::span<const T> in, Out* out, int threads) {
  const std::size_t n = in.size();
  if (n == 0) return 0;
  const std::size_t parts = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::uint64_t> partial(parts + 1, 0);

#pragma omp parallel num_threads(static_cast<int>(parts))
  {
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto [begin, end] = static_chunk(n, parts, t);
    std::uint64_t sum = 0;
    for (std::size_t i = begin; i < end; ++i) sum += in[i];
    partial[t + 1] = sum;
#pragma omp barrier
#pragma omp single
    for (std::size_t k = 1; k <= parts; ++k) partial[k] += partial[k - 1];
    std::uint64_t running = partial[t];
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t value = in[i];
      out[i] = static_cast<Out>(running);
      running += value;
    }
  }
  return partial[parts];
}

}  // namespace

int hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PEMB_THREADS"); env != nullptr && *env != '\0') {
    const int value = std::atoi(env);
    if (value > 0) return value;
    throw std::invalid_argument("PEMB_THREADS must be a positive integer, got '" + std::string(env) + "'");
  }
  return hardware_threads();
}

std::vector<std::uint64_t> prefix_sum(std::span<const std::uint64_t> values, int threads) {
  if (threads < 1) throw std::invalid_argument("prefix_sum: threads must be >= 1");
  std::vector<std::uint64_t> out(values.size());
  blocked_scan(values, out.data(), threads);
  return out;
}

std::uint64_t exclusive_scan_inplace(std::span<std::uint32_t> values, int threads) {
  if (threads < 1) throw std::invalid_argument("exclusive_scan_inplace: threads must be >= 1");
  // Reading and writing the same slot is safe: each worker reads its own
  // element before overwriting it.
  return blocked_scan(std::span<const std::uint32_t>(values), values.data(), threads);
}

}  // namespace pemb
