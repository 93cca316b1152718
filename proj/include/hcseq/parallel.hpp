#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hcseq {

inline unsigned default_threads() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

/// Splits [0, n) into `threads` contiguous blocks and runs body(block, begin, end)
/// for each. Block b always covers the same range for a given (n, threads), so
/// callers that merge per-block results in block order get a fixed reduction
/// order. The first exception thrown by any block is rethrown.
template <class Body>
void parallel_blocks(std::size_t n, unsigned threads, Body&& body) {
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2) {
        body(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    const std::size_t blocks = std::min<std::size_t>(threads, n);
    std::vector<std::exception_ptr> errors(blocks);
    {
        std::vector<std::jthread> workers;
        workers.reserve(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t begin = n * b / blocks, end = n * (b + 1) / blocks;
            workers.emplace_back([&, b, begin, end] {
                try {
                    body(b, begin, end);
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace hcseq
