#pragma once

/*
 * Contiguous-block work splitting. Results come back in block order,
 * so any merge that folds blocks left to right sees the same item
 * order as a sequential run, regardless of worker count.
 */

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace eil {

struct BlockRange {
    std::uint64_t begin;
    std::uint64_t end;
};

inline std::vector<BlockRange> split_blocks(std::uint64_t total, int workers) {
    if (workers < 1)
        workers = 1;
    const auto w = static_cast<std::uint64_t>(workers);
    std::vector<BlockRange> blocks;
    const std::uint64_t base = total / w;
    const std::uint64_t rem = total % w;
    std::uint64_t pos = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
        std::uint64_t len = base + (i < rem ? 1 : 0);
        blocks.push_back({pos, pos + len});
        pos += len;
    }
    return blocks;
}

// fn(begin, end) -> R, run once per block; single-worker runs stay on
// the calling thread
template <class R, class Fn>
std::vector<R> run_blocks(std::uint64_t total, int workers, Fn&& fn) {
    auto blocks = split_blocks(total, workers);
    std::vector<R> results(blocks.size());
    if (blocks.size() == 1) {
        results[0] = fn(blocks[0].begin, blocks[0].end);
        return results;
    }
    std::vector<std::thread> threads;
    threads.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        threads.emplace_back([&, i] { results[i] = fn(blocks[i].begin, blocks[i].end); });
    for (auto& t : threads)
        t.join();
    return results;
}

} // namespace eil
