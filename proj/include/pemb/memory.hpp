#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <new>
#include <vector>

namespace pemb {

// Process-wide byte counter for the large arrays of the library. Every
// container built on TrackedAllocator charges its allocations here, so the
// peak of a construction phase can be read back deterministically.
class MemoryAccountant {
 public:
  static MemoryAccountant& instance();

  void charge(std::size_t bytes) noexcept;
  void release(std::size_t bytes) noexcept;

  std::size_t current() const noexcept { return current_.load(std::memory_order_relaxed); }
  std::size_t peak() const noexcept { return peak_.load(std::memory_order_relaxed); }

  // Restarts peak tracking from the current level.
  void reset_peak() noexcept { peak_.store(current(), std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> current_{0};
  std::atomic<std::size_t> peak_{0};
};

// Records the peak growth over the live level at construction time.
class PeakScope {
 public:
  PeakScope() : baseline_(MemoryAccountant::instance().current()) {
    MemoryAccountant::instance().reset_peak();
  }
  std::size_t peak_bytes() const noexcept {
    const auto peak = MemoryAccountant::instance().peak();
    return peak > baseline_ ? peak - baseline_ : 0;
  }

 private:
  std::size_t baseline_;
};

template <class T>
struct TrackedAllocator {
  using value_type = T;

  TrackedAllocator() noexcept = default;
  template <class U>
  TrackedAllocator(const TrackedAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    const auto bytes = count * sizeof(T);
    T* ptr = static_cast<T*>(::operator new(bytes, std::align_val_t{alignof(T)}));
    MemoryAccountant::instance().charge(bytes);
    return ptr;
  }

  void deallocate(T* ptr, std::size_t count) noexcept {
    MemoryAccountant::instance().release(count * sizeof(T));
    ::operator delete(ptr, std::align_val_t{alignof(T)});
  }

  // Skip value-initialisation on resize(); callers fill every slot.
  template <class U, class... Args>
  void construct(U* ptr, Args&&... args) {
    if constexpr (sizeof...(Args) == 0) {
      ::new (static_cast<void*>(ptr)) U;
    } else {
      ::new (static_cast<void*>(ptr)) U(std::forward<Args>(args)...);
    }
  }

  template <class U>
  bool operator==(const TrackedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using tracked_vector = std::vector<T, TrackedAllocator<T>>;

template <class T>
std::size_t heap_bytes(const tracked_vector<T>& v) noexcept {
  return v.capacity() * sizeof(T);
}

// Resident-set high-water mark of the process, 0 where unavailable.
std::size_t os_peak_rss_bytes();

}  // namespace pemb
