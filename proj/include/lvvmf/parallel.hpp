#pragma once

// Chunked parallel loops over integer ranges. The worker count comes from
// LVVMF_THREADS when set, otherwise std::thread::hardware_concurrency().

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lvvmf {

unsigned worker_count();

/// Runs body(lo, hi) over disjoint half-open chunks covering [begin, end),
/// then returns the per-chunk results in chunk order so reductions stay
/// deterministic regardless of thread count.
template <class R>
std::vector<R> parallel_chunks(std::int64_t begin, std::int64_t end,
                               const std::function<R(std::int64_t, std::int64_t)>& body,
                               std::int64_t chunk = 0) {
    if (end <= begin) return {};
    const unsigned workers = worker_count();
    if (chunk <= 0) chunk = std::max<std::int64_t>(1, (end - begin + 4 * workers - 1) / (4 * workers));
    const std::int64_t n_chunks = (end - begin + chunk - 1) / chunk;
    std::vector<R> results(static_cast<std::size_t>(n_chunks));
    if (workers <= 1 || n_chunks == 1) {
        for (std::int64_t k = 0; k < n_chunks; ++k)
            results[k] = body(begin + k * chunk, std::min(end, begin + (k + 1) * chunk));
        return results;
    }
    std::mutex mu;
    std::int64_t next = 0;
    std::exception_ptr error;
    auto run = [&] {
        for (;;) {
            std::int64_t k;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= n_chunks || error) return;
                k = next++;
            }
            try {
                results[k] = body(begin + k * chunk, std::min(end, begin + (k + 1) * chunk));
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::int64_t>(workers, n_chunks));
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace lvvmf
