#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace ricci {

inline int hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(i) for i in [0, count) on a small thread pool. Results must be
// written to disjoint, pre-sized slots so output order stays deterministic.
template <typename Fn>
void parallel_for(int64_t count, Fn&& fn, int threads = 0) {
    if (threads <= 0)
        threads = hardware_threads();
    threads = static_cast<int>(std::min<int64_t>(threads, std::max<int64_t>(count, 1)));
    if (threads <= 1 || count <= 1) {
        for (int64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        constexpr int64_t kChunk = 16;
        while (!failed.load(std::memory_order_relaxed)) {
            int64_t begin = next.fetch_add(kChunk);
            if (begin >= count)
                return;
            int64_t end = std::min(begin + kChunk, count);
            try {
                for (int64_t i = begin; i < end; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace ricci
