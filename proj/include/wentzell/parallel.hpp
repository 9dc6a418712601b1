#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wentzell {

/// Worker count: hardware concurrency capped by the WENTZELL_THREADS
/// environment variable.
inline int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("WENTZELL_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

/// Runs body(i) for i in [0, n). Results must land in disjoint slots so the
/// outcome does not depend on the thread count.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = n;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace wentzell
