// Copyright 2026 The circlaw Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace circlaw {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Evaluates fn(trial) for trial in [0, trials) and returns the results in
/// trial order. Trials are handed out through an atomic index, so the mapping
/// from trial to result never depends on the worker count; reductions over
/// the returned vector are therefore reproducible.
template <typename T, typename Fn>
std::vector<T> parallel_map_trials(int trials, int workers, Fn&& fn) {
    std::vector<T> results(static_cast<std::size_t>(trials));
    workers = resolve_workers(workers);
    if (workers <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) results[static_cast<std::size_t>(t)] = fn(t);
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const int thread_count = std::min(workers, trials);
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int w = 0; w < thread_count; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= trials) return;
                try {
                    results[static_cast<std::size_t>(t)] = fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace circlaw
