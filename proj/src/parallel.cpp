#include "thresholdlab/parallel.hpp"

#include <atomic>

namespace tlab {

namespace {
std::atomic<int> g_threads{1};
}

int worker_threads() { return g_threads.load(); }

void set_worker_threads(int n) {
    if (n <= 0) n = int(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    g_threads.store(n);
}

} // namespace tlab
