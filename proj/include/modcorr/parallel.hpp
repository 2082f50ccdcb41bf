// ---------------------------------------------------------------------------
// Deterministic block-parallel execution.
//
// Work is split into a fixed number of blocks that depends only on the
// problem size, never on the thread count.  Each block produces its partial
// result into a preallocated slot; slots are then reduced sequentially in
// block order.  Output is therefore bit-identical for any number of threads.
// ---------------------------------------------------------------------------
#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace modcorr {

inline int normalize_thread_count(int threads) {
    if (threads < 1) threads = 1;
    if (threads > 64) threads = 64;
    return threads;
}

// Fixed block count for n items: enough blocks to balance load, few enough
// that per-block overhead stays invisible.  Depends on n only.
inline std::int64_t deterministic_block_count(std::int64_t n) {
    if (n <= 0) return 0;
    if (n < 256) return n;
    return 256;
}

// body(block_index, begin, end) fills slot block_index of the caller's
// result vector.  Blocks are claimed through an atomic cursor, so thread
// scheduling affects timing only.
template <typename Body>
void run_blocks(std::int64_t n, int threads, Body&& body) {
    std::int64_t n_blocks = deterministic_block_count(n);
    if (n_blocks == 0) return;
    threads = normalize_thread_count(threads);
    if (threads == 1 || n_blocks == 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            std::int64_t begin = n * b / n_blocks;
            std::int64_t end = n * (b + 1) / n_blocks;
            body(b, begin, end);
        }
        return;
    }
    std::atomic<std::int64_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::int64_t b = cursor.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            std::int64_t begin = n * b / n_blocks;
            std::int64_t end = n * (b + 1) / n_blocks;
            body(b, begin, end);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace modcorr
