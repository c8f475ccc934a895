#pragma once

// Deterministic fork-join helper.  Work items are pure functions of their
// index and write into preallocated slots, so the number of workers can
// never change a result byte; it only changes wall time.

#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fre {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count) and returns the results in index order.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
    std::vector<R> out(count);
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }

    if (threads > count) threads = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    std::exception_ptr first_error = nullptr;
    std::mutex err_mtx;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                // static contiguous blocks; slot i depends only on i
                std::size_t lo = count * w / threads;
                std::size_t hi = count * (w + 1) / threads;
                for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

} // namespace fre
