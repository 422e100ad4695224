#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace help2p::detail {

// Runs body(i) for i < count on up to `jobs` threads; rethrows the first failure.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, count); ++w) {
        workers.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace help2p::detail
