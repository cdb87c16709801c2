#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gch {

/// Runs the jobs on up to `workers` threads. Rethrows the first exception a
/// job raised after all threads have joined. workers <= 1 runs inline.
inline void run_parallel(int workers, const std::vector<std::function<void()>>& jobs) {
    if (workers <= 1 || jobs.size() <= 1) {
        for (const auto& job : jobs) job();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) break;
            try {
                jobs[j]();
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<int>(workers, static_cast<int>(jobs.size()));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// Default worker count: the GCH_WORKERS environment variable if set,
/// otherwise the machine's hardware concurrency.
inline int default_workers() {
    if (const char* env = std::getenv("GCH_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace gch
