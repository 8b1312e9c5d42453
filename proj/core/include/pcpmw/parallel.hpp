#pragma once

// Deterministic parallel map-reduce over an index range: the range is split
// into fixed chunks, workers fill per-chunk slots, and the combine runs in
// index order, so results do not depend on the worker count or scheduling.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pcpmw {

template <typename Acc, typename MapChunk, typename Combine>
Acc parallel_reduce(std::uint64_t begin, std::uint64_t end, unsigned workers,
                    Acc init, MapChunk map_chunk, Combine combine) {
    if (workers <= 1 || end - begin < 2) {
        Acc acc = init;
        combine(acc, map_chunk(begin, end));
        return acc;
    }
    std::uint64_t n = end - begin;
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<Acc> slots(workers, init);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t lo = begin + n * w / workers;
        std::uint64_t hi = begin + n * (w + 1) / workers;
        threads.emplace_back([&, w, lo, hi] { slots[w] = map_chunk(lo, hi); });
    }
    for (auto& t : threads) t.join();
    Acc acc = init;
    for (unsigned w = 0; w < workers; ++w) combine(acc, slots[w]);
    return acc;
}

} // namespace pcpmw
