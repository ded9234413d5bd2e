#pragma once

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace perc {

// Runs fn(r) for r in [0, replicates) on up to `threads` workers. Each
// replicate must write only its own slots, so results are identical for any
// worker count.
template <class Fn>
void for_each_replicate(int replicates, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, replicates));
    if (threads == 1) {
        for (int r = 0; r < replicates; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int r = next.fetch_add(1, std::memory_order_relaxed);
                if (r >= replicates) break;
                fn(r);
            }
        });
    }
    for (std::thread& th : pool) th.join();
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
};

// Reduction in index order; byte-stable for a fixed input regardless of how
// the values were produced.
inline MeanStderr mean_stderr(const std::vector<double>& values) {
    MeanStderr out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
    return out;
}

}  // namespace perc
