#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qtele {

// Worker count for grid evaluation: QTELE_THREADS caps it, 0 or unset means
// one worker per hardware thread.
inline unsigned worker_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("QTELE_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end && *end == '\0') n = static_cast<unsigned>(parsed);
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, count). Results must be written into pre-sized
// slots so the outcome is identical for any worker count. The first
// exception wins and is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_error{count};
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                if (first_error.load(std::memory_order_relaxed) < count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::size_t expected = count;
                    if (first_error.compare_exchange_strong(expected, i)) {
                        error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qtele
