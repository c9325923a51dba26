#include "ouflow/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace ouflow {

int max_threads() {
    static const int cached = [] {
        if (const char* env = std::getenv("OUFLOW_THREADS")) {
            int n = std::atoi(env);
            if (n >= 1) return n;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cached;
}

void parallel_for(std::ptrdiff_t begin, std::ptrdiff_t end,
                  const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& fn) {
    const std::ptrdiff_t n = end - begin;
    if (n <= 0) return;
    const int nt = std::min<std::ptrdiff_t>(max_threads(), n);
    if (nt == 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nt);
    const std::ptrdiff_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const std::ptrdiff_t lo = begin + t * chunk;
        const std::ptrdiff_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back(fn, lo, hi);
    }
    for (auto& w : workers) w.join();
}

namespace {

double sum_block(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return sum_block(v, half) + sum_block(v + half, n - half);
}

} // namespace

double pairwise_sum(std::span<const double> values) {
    return sum_block(values.data(), values.size());
}

} // namespace ouflow
