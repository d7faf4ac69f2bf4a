#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace scholz::cli {

/// Ordered parallel map.  fn(i) returns a result for input i; stop(result) marks a
/// result after which later inputs are dropped (fail-fast).  Output order is input
/// order, so the result does not depend on the number of workers.
template <class R, class Fn, class Stop>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, Fn&& fn, Stop&& stop)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> cut{none};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || i > cut.load())
                return;
            try {
                out[i] = fn(i);
            } catch (...) {
                if (!failed.exchange(true))
                    failure = std::current_exception();
                cut.store(0);
                return;
            }
            if (stop(out[i])) {
                std::size_t c = cut.load();
                while (i < c && !cut.compare_exchange_weak(c, i)) {
                }
            }
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < jobs && t < n; ++t)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();
    if (failed)
        std::rethrow_exception(failure);
    std::size_t c = cut.load();
    if (c != none)
        out.resize(c + 1);
    return out;
}

} // namespace scholz::cli
