#pragma once

#include <cstdint>
#include <thread>
#include <vector>

#include "polyadic/core.hpp"

namespace polyadic {

// Splits [0,total) into one contiguous chunk per worker and concatenates the
// per-chunk results in chunk order, so the outcome is independent of the
// worker count and of scheduling. chunk_fn(begin, end) -> std::vector<T>.
template <typename T, typename ChunkFn>
std::vector<T> partitioned_collect(std::uint64_t total, int workers, ChunkFn chunk_fn) {
    if (workers < 1) workers = 1;
    const std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), total ? total : 1);
    if (w <= 1) return chunk_fn(0, total);

    std::vector<std::vector<T>> parts(w);
    std::vector<std::thread> threads;
    threads.reserve(w);
    const std::uint64_t step = total / w, extra = total % w;
    std::uint64_t begin = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t end = begin + step + (i < extra ? 1 : 0);
        threads.emplace_back([&, i, begin, end] { parts[i] = chunk_fn(begin, end); });
        begin = end;
    }
    for (auto& t : threads) t.join();

    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline std::uint64_t factorial(std::uint32_t n) {
    std::uint64_t f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// Lehmer-code unranking: permutation of {0..n-1} at position `rank` in
// lexicographic order. The _into form reuses caller buffers so hot loops
// do not allocate.
inline void unrank_permutation_into(std::uint64_t rank, std::uint32_t n, std::vector<Elem>& pool,
                                    std::vector<Elem>& out) {
    pool.resize(n);
    out.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::uint32_t live = n;
    std::uint64_t f = factorial(n);
    for (std::uint32_t i = n; i > 0; --i) {
        f /= i;
        const std::uint32_t d = static_cast<std::uint32_t>(rank / f);
        rank %= f;
        out[n - i] = pool[d];
        --live;
        for (std::uint32_t j = d; j < live; ++j) pool[j] = pool[j + 1];
    }
}

inline std::vector<Elem> unrank_permutation(std::uint64_t rank, std::uint32_t n) {
    std::vector<Elem> pool, out;
    unrank_permutation_into(rank, n, pool, out);
    return out;
}

} // namespace polyadic
