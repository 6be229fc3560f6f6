/// @file parallel.cpp
/// @brief Thread policy and the deterministic map helper.

#include "cbf/fields/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cbf::fields {

namespace {

int resolve_thread_count() {
    const char* env = std::getenv("CBF_THREADS");
    long v = 0;
    if (env && *env) {
        char* end = nullptr;
        v = std::strtol(env, &end, 10);
        if (end == env) v = 0;
    }
    if (v > 0) return static_cast<int>(std::clamp<long>(v, 1, 64));
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp<unsigned>(hw == 0 ? 1 : hw, 1, 16));
}

// Chunks below this size run inline; the thread launch would dominate.
constexpr std::int64_t kMinParallelRange = 8;

}  // namespace

int thread_count() {
    static const int count = resolve_thread_count();
    return count;
}

void parallel_for_chunks(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t, std::int64_t)>& fn) {
    const std::int64_t range = end - begin;
    if (range <= 0) return;
    const int workers = std::min<std::int64_t>(thread_count(), range / kMinParallelRange);
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (range + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = begin + w * chunk;
        const std::int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn) {
    parallel_for_chunks(begin, end, [&fn](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace cbf::fields
