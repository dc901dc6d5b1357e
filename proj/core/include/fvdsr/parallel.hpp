#pragma once

#include <algorithm>
#include <exception>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace fvdsr {

/// Order-preserving map over contiguous chunks on up to `threads` workers.
/// The first exception thrown by any worker is rethrown on the caller.
template <class In, class F>
auto parallel_map(std::span<const In> items, F&& f, unsigned threads)
    -> std::vector<std::invoke_result_t<F&, const In&>> {
    using Out = std::invoke_result_t<F&, const In&>;
    std::vector<Out> out(items.size());
    const std::size_t n = items.size();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(items[i]);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) out[i] = f(items[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace fvdsr
