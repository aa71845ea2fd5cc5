#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace signet {

// Worker count resolution: explicit flag, then SIGNET_THREADS, then the
// hardware count.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIGNET_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Splits [0, count) into per-worker chunks, runs `work(chunk_index, begin,
// end)` concurrently, then `merge(chunk_index)` sequentially in chunk order.
// Results are therefore independent of the worker count.
template <typename Work, typename Merge>
void parallel_chunks(long long count, int threads, Work&& work, Merge&& merge) {
    threads = static_cast<int>(
        std::max<long long>(1, std::min<long long>(threads, count == 0 ? 1 : count)));
    if (threads == 1) {
        work(0, 0LL, count);
        merge(0);
        return;
    }
    std::vector<std::thread> pool;
    long long per = (count + threads - 1) / threads;
    for (int c = 0; c < threads; ++c) {
        long long begin = c * per;
        long long end = std::min(count, begin + per);
        pool.emplace_back([&, c, begin, end] { work(c, begin, end); });
    }
    for (auto& t : pool) t.join();
    for (int c = 0; c < threads; ++c) merge(c);
}

}  // namespace signet
