#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace mtt {

/// Worker cap: MTT_THREADS when set (minimum 1), hardware concurrency
/// otherwise.
inline int worker_cap() {
    if (const char* env = std::getenv("MTT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(0..count-1), possibly in parallel. Each index owns its output slot,
/// so results are deterministic regardless of scheduling. Exceptions from
/// workers are rethrown on the calling thread.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::min(worker_cap(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load())
                    return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failed.load())
        std::rethrow_exception(error);
}

}  // namespace mtt
