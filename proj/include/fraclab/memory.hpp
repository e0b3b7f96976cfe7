#pragma once

#include <cstddef>
#include <new>
#include <vector>

namespace fraclab {

/// Counts bytes held by solver-internal buffers (not OS resident memory).
struct MemoryMeter {
    std::size_t current = 0;
    std::size_t peak = 0;
    std::size_t allocations = 0;

    void allocate(std::size_t bytes) {
        current += bytes;
        ++allocations;
        if (current > peak) peak = current;
    }
    void release(std::size_t bytes) { current -= bytes; }
};

/// Allocator that reports to an optional MemoryMeter.
template <class T>
struct MeteredAllocator {
    using value_type = T;
    MemoryMeter* meter = nullptr;

    MeteredAllocator() = default;
    explicit MeteredAllocator(MemoryMeter* m) : meter(m) {}
    template <class U>
    MeteredAllocator(const MeteredAllocator<U>& o) : meter(o.meter) {}

    T* allocate(std::size_t n) {
        if (meter) meter->allocate(n * sizeof(T));
        return static_cast<T*>(::operator new(n * sizeof(T)));
    }
    void deallocate(T* p, std::size_t n) {
        if (meter) meter->release(n * sizeof(T));
        ::operator delete(p);
    }
    template <class U>
    bool operator==(const MeteredAllocator<U>& o) const { return meter == o.meter; }
};

template <class T>
using metered_vector = std::vector<T, MeteredAllocator<T>>;

}  // namespace fraclab
