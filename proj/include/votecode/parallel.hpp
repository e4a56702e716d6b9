#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace votecode {

// Resolves a thread-count request: values <= 0 mean "use what the machine has".
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static partition of [0, count) into contiguous chunks, one per thread.
// Every chunk knows its own index so callers can write results into
// per-chunk slots and reduce them in chunk order afterwards. Callers must
// keep per-item work independent of the partitioning (per-item RNG streams,
// integer accumulators) so output is identical at any thread count.
inline void parallel_for_chunks(std::int64_t count, int threads,
                                const std::function<void(int chunk, std::int64_t begin, std::int64_t end)>& body) {
    threads = resolve_threads(threads);
    if (count <= 0) return;
    if (threads > count) threads = static_cast<int>(count);
    if (threads == 1) {
        body(0, 0, count);
        return;
    }
    const std::int64_t chunk_size = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int c = 0; c < threads; ++c) {
        const std::int64_t begin = static_cast<std::int64_t>(c) * chunk_size;
        const std::int64_t end = begin + chunk_size < count ? begin + chunk_size : count;
        if (begin >= end) break;
        pool.emplace_back([&body, c, begin, end] { body(c, begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace votecode
