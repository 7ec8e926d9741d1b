#include "cauchy/util.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cauchy {

int max_threads() {
    static const int cached = [] {
        int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (hw <= 0) hw = 1;
        if (const char* env = std::getenv("CAUCHY_SPECTRAL_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v < hw ? v : hw;
        }
        return hw;
    }();
    return cached;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(max_threads(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
    // 5-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        double half = 0.5 * h;
        for (int q = 0; q < 5; ++q) acc += ws[q] * f(mid + half * xs[q]) * half;
    }
    return acc;
}

}  // namespace cauchy
