#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace emo::detail {

/// Runs fn(chunk) for chunk in [0, chunks) on a few threads and returns the
/// results indexed by chunk, so reductions over them are order-stable.
template <class Fn>
auto map_chunks(std::uint64_t chunks, Fn fn) -> std::vector<decltype(fn(std::uint64_t{}))>
{
    std::vector<decltype(fn(std::uint64_t{}))> results(chunks);
    const auto hw = std::max(1U, std::thread::hardware_concurrency());
    const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(hw, chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            results[c] = fn(c);
        }
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t c = w; c < chunks; c += workers) {
                results[c] = fn(c);
            }
        });
    }
    pool.clear();
    return results;
}

} // namespace emo::detail
