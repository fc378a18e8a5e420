#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace rrtcut {

/// Worker count from RRTCUT_WORKERS, else the hardware concurrency.
inline unsigned default_workers() {
    if (const char* env = std::getenv("RRTCUT_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, count) on `workers` threads and returns the
/// results in index order. Results never depend on the worker count as long
/// as fn(i) is a function of i alone.
template <class F>
auto parallel_map(std::uint64_t count, unsigned workers, F&& fn) -> std::vector<std::invoke_result_t<F&, std::uint64_t>> {
    using T = std::invoke_result_t<F&, std::uint64_t>;
    std::vector<T> out(count);
    workers = std::max(1u, workers);
    if (workers == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    constexpr std::uint64_t chunk = 64;
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        try {
            while (true) {
                const std::uint64_t begin = next.fetch_add(chunk);
                if (begin >= count) return;
                const std::uint64_t end = std::min(count, begin + chunk);
                for (std::uint64_t i = begin; i < end; ++i) out[i] = fn(i);
            }
        } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace rrtcut
