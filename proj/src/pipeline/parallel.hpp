#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gst::pipeline::detail {

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; when
/// several chunks throw, the exception from the lowest index is rethrown so
/// failures are reported the same way as a sequential run.
template <typename Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn)
{
    const std::size_t workers =
        parallel ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n / 64 + 1) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            const std::size_t end = std::min(n, (w + 1) * chunk);
            try {
                for (std::size_t i = w * chunk; i < end; ++i) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace gst::pipeline::detail
