#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "cauchy/operators.hpp"
#include "cauchy/util.hpp"

namespace cauchy::testing {

inline GridPtr periodic_line(int n, double lo = 0.0, double hi = 6.283185307179586) {
    AxisSpec ax;
    ax.n = n;
    ax.lo = lo;
    ax.hi = hi;
    ax.periodic = true;
    return build_grid({ax});
}

inline GridPtr truncated_line(int n, double lo, double hi) {
    AxisSpec ax;
    ax.n = n;
    ax.lo = lo;
    ax.hi = hi;
    return build_grid({ax});
}

inline GridPtr periodic_square(int nx, int ny, double len = 6.283185307179586) {
    AxisSpec ax;
    ax.n = nx;
    ax.lo = 0.0;
    ax.hi = len;
    ax.periodic = true;
    AxisSpec ay = ax;
    ay.n = ny;
    return build_grid({ax, ay});
}

inline GridPtr truncated_square(int nx, int ny, double lo, double hi) {
    AxisSpec ax;
    ax.n = nx;
    ax.lo = lo;
    ax.hi = hi;
    AxisSpec ay = ax;
    ay.n = ny;
    return build_grid({ax, ay});
}

// Smooth strictly positive field, deterministic per rng state.
inline ScalarField random_positive_field(const GridPtr& g, Rng& rng, double base = 1.5,
                                         double amp = 0.5) {
    std::vector<double> v(static_cast<size_t>(g->size()));
    double p1 = rng.uniform(0, 6.28), p2 = rng.uniform(0, 6.28);
    double a1 = rng.uniform(0.3, 1.0), a2 = rng.uniform(0.3, 1.0);
    for (std::int64_t i = 0; i < g->size(); ++i) {
        double x, y;
        g->node(i, x, y);
        double s = a1 * std::sin(x + p1) + a2 * std::cos(2 * x + p2);
        if (g->dim() == 2) s += a2 * std::sin(y + p2) * std::cos(x);
        v[static_cast<size_t>(i)] = base + amp * s / (a1 + 2 * a2);
    }
    return ScalarField::from_values(g, std::move(v));
}

// Random smooth field vanishing (with two powers) at non-periodic walls.
inline ScalarField random_compact_field(const GridPtr& g, Rng& rng) {
    std::vector<double> v(static_cast<size_t>(g->size()));
    double p1 = rng.uniform(0, 6.28), p2 = rng.uniform(0, 6.28);
    double k1 = 1 + rng.index(3), k2 = 1 + rng.index(3);
    for (std::int64_t i = 0; i < g->size(); ++i) {
        double x, y;
        g->node(i, x, y);
        double s = std::sin(k1 * x + p1) + 0.5 * std::cos(k2 * (x + y) + p2);
        double mask = 1.0;
        for (int a = 0; a < g->dim(); ++a) {
            const Axis& ax = g->axis(a);
            if (ax.periodic) continue;
            double c = a == 0 ? x : y;
            double u = (c - ax.lo) / (ax.hi - ax.lo);
            mask *= 16.0 * u * u * (1.0 - u) * (1.0 - u);
        }
        v[static_cast<size_t>(i)] = s * mask;
    }
    return ScalarField::from_values(g, std::move(v));
}

// Dense symmetrized form D A D^-1 with D = sqrt(W); the independent route
// used to check eigenvalue claims.
inline Eigen::MatrixXd dense_symmetrized(const SparseOperator& op) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(op.n, op.n);
    for (std::int64_t i = 0; i < op.n; ++i)
        for (std::int64_t k = op.row_ptr[i]; k < op.row_ptr[i + 1]; ++k)
            M(i, op.col[k]) = std::sqrt(op.weight[i]) * op.val[k] / std::sqrt(op.weight[op.col[k]]);
    return 0.5 * (M + M.transpose());
}

inline std::vector<double> dense_eigenvalues(const SparseOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_symmetrized(op),
                                                      Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + op.n);
    return ev;
}

}  // namespace cauchy::testing
