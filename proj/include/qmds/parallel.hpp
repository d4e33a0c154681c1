#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace qmds::detail {

/// Run fn(begin, end) over [0, count) split into contiguous chunks, one per
/// worker. Results must be merged by the caller; the split is a pure function
/// of (count, threads) so any merge keyed by index stays deterministic.
inline void parallel_chunks(std::size_t count, int threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (threads < 1)
        threads = 1;
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (workers <= 1) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back(fn, begin, end);
    }
    for (auto& t : pool)
        t.join();
}

inline int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace qmds::detail
