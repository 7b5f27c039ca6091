#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace qpball {

/// Index-addressed parallel map: out[i] = f(i).  Each task must be pure; the
/// result vector is identical for any worker count, so estimates stay
/// reproducible whether or not the host has cores to spare.
template <typename F>
auto parallel_map(size_t count, F&& f, unsigned threads = 0) {
    using R = std::decay_t<decltype(f(size_t(0)))>;
    std::vector<R> out(count);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, count == 0 ? 1 : static_cast<unsigned>(count));
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                out[i] = f(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

} // namespace qpball
