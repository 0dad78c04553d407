#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace xmmd {

namespace detail {
inline std::atomic<std::size_t>& thread_override() {
    static std::atomic<std::size_t> value{0};
    return value;
}

// Set on pool workers; nested parallel_for calls then run inline.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

/// Worker count used by parallel loops. Resolution order: set_thread_count(),
/// the XMMD_THREADS environment variable, hardware concurrency.
inline std::size_t thread_count() {
    if (auto v = detail::thread_override().load(); v > 0) return v;
    if (const char* env = std::getenv("XMMD_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0) return static_cast<std::size_t>(parsed);
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// 0 restores the default resolution.
inline void set_thread_count(std::size_t n) { detail::thread_override().store(n); }

/// Calls body(i) for i in [0, count). Iterations are handed out dynamically, so
/// body must write only to slots owned by i; results are then independent of
/// scheduling. The first exception thrown by any iteration is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = detail::in_parallel_region ? 1 : std::min(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        const bool outer = detail::in_parallel_region;
        detail::in_parallel_region = true;
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
            }
        }
        detail::in_parallel_region = outer;
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace xmmd
