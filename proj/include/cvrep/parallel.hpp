#pragma once

#include <future>
#include <thread>
#include <vector>

namespace cvrep {

/// Evaluates out[i] = f(i) for i in [0, n) on a small worker pool.
/// Work is chunked contiguously and results land at their index, so any
/// subsequent reduction in index order is deterministic regardless of the
/// thread count.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f, unsigned threads = 0) {
    std::vector<T> out(n);
    if (n == 0) return out;
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
        }));
    }
    for (auto& fu : futs) fu.get();
    return out;
}

} // namespace cvrep
