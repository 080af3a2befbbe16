#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ssmass {

// Worker count: min(hardware, 8), capped by SSMASS_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (n > 8) n = 8;
    if (const char* env = std::getenv("SSMASS_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Partitions [0, n) into contiguous chunks and sums fn over each item.
// Counting sums are order-independent, so the result is identical for any
// worker count.
template <class Fn>
std::uint64_t parallel_count(std::uint64_t n, Fn fn) {
    const unsigned workers = n < 1024 ? 1 : worker_count();
    if (workers == 1) {
        std::uint64_t acc = 0;
        for (std::uint64_t i = 0; i < n; ++i) acc += fn(i);
        return acc;
    }
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = n * w / workers;
        const std::uint64_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] {
            std::uint64_t acc = 0;
            for (std::uint64_t i = lo; i < hi; ++i) acc += fn(i);
            partial[w] = acc;
        });
    }
    for (auto& t : pool) t.join();
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

} // namespace ssmass
