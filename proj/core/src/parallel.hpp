#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace generank::detail {

inline std::size_t worker_count(std::size_t tasks) {
    const auto hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::min(hw, tasks);
}

/// Runs fn(i) for i in [0, count) on a small thread pool. If any call
/// throws, the exception from the lowest index is rethrown after all
/// workers finish, so failures are reported deterministically.
template <typename Fn>
void parallel_for(std::size_t count, Fn &&fn) {
    if (count == 0) return;
    const auto workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto work = [&] {
        for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace generank::detail
