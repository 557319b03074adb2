#ifndef BCJ_UTIL_HPP
#define BCJ_UTIL_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace bcj {

inline int popcount32(std::uint32_t x) { return std::popcount(x); }

// Split [0, total) into contiguous chunks and run fn(begin, end) on each,
// using up to n_threads worker threads. fn must be safe to run concurrently
// on disjoint ranges. n_threads <= 1 degenerates to a plain loop.
inline void parallel_ranges(std::size_t total, unsigned n_threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (total == 0) return;
    if (n_threads == 0) n_threads = 1;
    if (n_threads <= 1 || total < 2 * n_threads) {
        fn(0, total);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    std::size_t chunk = (total + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
        std::size_t lo = t * chunk;
        if (lo >= total) break;
        std::size_t hi = std::min(total, lo + chunk);
        workers.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& w : workers) w.join();
}

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

} // namespace bcj

#endif
