#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace tlab {

// Global worker count used by trial-parallel operations. 0 = decide from
// hardware. Set once by the CLI (--threads / THRESHOLDLAB_THREADS); tests
// set it directly to exercise the determinism contract.
int worker_threads();
void set_worker_threads(int n);

// Runs fn(t) for t in [0, count). Work is split into contiguous blocks, one
// per worker; fn must write only to its own trial-indexed slot so the result
// is independent of the thread count. Exceptions propagate from worker 0's
// re-throw after join.
template <typename F>
void parallel_trials(std::uint64_t count, F&& fn) {
    int threads = worker_threads();
    if (threads <= 1 || count < 2) {
        for (std::uint64_t t = 0; t < count; ++t) fn(t);
        return;
    }
    if (std::uint64_t(threads) > count) threads = int(count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::uint64_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::uint64_t lo = w * chunk;
        std::uint64_t hi = lo + chunk < count ? lo + chunk : count;
        pool.emplace_back([&, w, lo, hi] {
            try {
                for (std::uint64_t t = lo; t < hi; ++t) fn(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace tlab
