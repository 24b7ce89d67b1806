#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eigenshape {

/// Thread count from an explicit request, else EIGENSHAPE_THREADS, else the
/// number of logical cores (at least 1).
int resolve_thread_count(int requested);

/// Runs job(i) for i in [0, n_jobs) on at most `threads` workers. Jobs share
/// no state through this helper; the first exception is rethrown after all
/// workers finish.
inline void parallel_for(int n_jobs, int threads, const std::function<void(int)>& job) {
    const int workers = std::max(1, std::min(threads, n_jobs));
    if (workers == 1) {
        for (int i = 0; i < n_jobs; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n_jobs; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace eigenshape
