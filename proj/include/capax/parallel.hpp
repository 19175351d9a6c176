#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace capax {

/// Worker-pool bound: CAPAX_THREADS if set, else hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("CAPAX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Static partition of [0, n) into contiguous chunks, one per thread.
/// Deterministic: the chunking depends only on n and the thread bound, and
/// callers combine per-chunk results in chunk order.
inline void parallel_chunks(int n, const std::function<void(int chunk, int begin, int end)>& fn) {
    int nt = std::min(thread_count(), std::max(n, 1));
    if (nt <= 1 || n < 256) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        int b = static_cast<int>(static_cast<long long>(n) * t / nt);
        int e = static_cast<int>(static_cast<long long>(n) * (t + 1) / nt);
        pool.emplace_back([&fn, t, b, e] { fn(t, b, e); });
    }
    for (auto& th : pool) th.join();
}

} // namespace capax
