#include "pemb/memory.hpp"

#include <sys/resource.h>

namespace pemb {

MemoryAccountant& MemoryAccountant::instance() {
  static MemoryAccountant accountant;
  return accountant;
}

void MemoryAccountant::charge(std::size_t bytes) noexcept {
  const auto now = current_.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  auto seen = peak_.load(std::memory_order_relaxed);
  while (now > seen && !peak_.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
  }
}

void MemoryAccountant::release(std::size_t bytes) noexcept {
  current_.fetch_sub(bytes, std::memory_order_relaxed);
}

std::size_t os_peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::size_t>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

}  // namespace pemb
