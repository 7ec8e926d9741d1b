#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace cauchy {

// Deterministic random stream. The engine is pinned by the standard; the
// uniform mapping is done by hand so that identical seeds give identical
// doubles on every platform (std::uniform_real_distribution does not
// guarantee that).
class Rng {
public:
    explicit Rng(std::uint64_t seed = 12345) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int index(int n) { return static_cast<int>(bits() % static_cast<std::uint64_t>(n)); }

private:
    std::mt19937_64 eng_;
};

// Worker cap: CAUCHY_SPECTRAL_THREADS when set, hardware concurrency otherwise.
int max_threads();

// Runs fn(0..n-1) on up to max_threads() workers. fn must only touch
// disjoint output slots; iteration order is unspecified.
void parallel_for(int n, const std::function<void(int)>& fn);

// Composite 5-point Gauss-Legendre quadrature over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64);

}  // namespace cauchy
