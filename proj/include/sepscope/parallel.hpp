#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace sepscope {

/// Thread count from an explicit value, else SEPSCOPE_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> requested = std::nullopt);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Callers write
/// results into slot i, so output order never depends on scheduling. The
/// exception of the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto count = std::min<std::size_t>(threads, n);
        pool.reserve(count);
        for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace sepscope
