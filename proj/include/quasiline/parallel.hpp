/**
 * @file parallel.hpp
 * @brief Chunked parallel loops for the exhaustive verifiers.
 *
 * All algebra objects are immutable while verifiers run, so workers share
 * them read-only. Failure reduction keeps the smallest failing index to make
 * counterexamples deterministic regardless of the worker count.
 */
#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace quasiline {

/// Worker count: explicit value, else QUASILINE_JOBS, else hardware.
inline unsigned resolve_jobs(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QUASILINE_JOBS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs body(i) for i in [0, n); returns the smallest i for which body
/// returned false (a failure), or nullopt when all passed.
inline std::optional<std::uint64_t> parallel_find_failure(
    std::uint64_t n, unsigned jobs, const std::function<bool(std::uint64_t)>& body) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || n < 2048) {
        for (std::uint64_t i = 0; i < n; ++i)
            if (!body(i)) return i;
        return std::nullopt;
    }
    std::vector<std::uint64_t> first(jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        pool.emplace_back([&, w] {
            std::uint64_t lo = n * w / jobs, hi = n * (w + 1) / jobs;
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (!body(i)) {
                    first[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t best = n;
    for (auto f : first) best = std::min(best, f);
    if (best == n) return std::nullopt;
    return best;
}

}  // namespace quasiline
