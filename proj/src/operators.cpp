#include "cauchy/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cauchy {

namespace {

// Centered difference neighbors of idx along axis a; missing neighbors (walls)
// are reported as -1 and stand for a zero ghost value.
struct CenteredPair {
    std::int64_t prev, next;
};

CenteredPair centered(const Grid& g, std::int64_t idx, int a) {
    return {g.neighbor(idx, a, -1), g.neighbor(idx, a, +1)};
}

}  // namespace

DiffusionCoefficients diffusion_coefficients(const WeightedManifold& wm) {
    const Grid& g = *wm.grid;
    DiffusionCoefficients c;
    size_t n = static_cast<size_t>(g.size());
    for (int a = 0; a < g.dim(); ++a) {
        c.axis[a].resize(n);
        for (std::int64_t i = 0; i < g.size(); ++i)
            c.axis[a][static_cast<size_t>(i)] =
                wm.weight.values[static_cast<size_t>(i)] * wm.metric.inverse(i, a, a);
    }
    if (g.dim() == 2 && wm.metric.has_cross_terms()) {
        c.has_cross = true;
        c.cross.resize(n);
        for (std::int64_t i = 0; i < g.size(); ++i)
            c.cross[static_cast<size_t>(i)] =
                wm.weight.values[static_cast<size_t>(i)] * wm.metric.inverse(i, 0, 1);
    }
    return c;
}

SparseOperator assemble_divergence_form(const GridPtr& grid, const DiffusionCoefficients& coeffs,
                                        const std::vector<double>& density, double sign,
                                        const std::vector<double>* diagonal, AssemblyForm form) {
    const Grid& g = *grid;
    const std::int64_t n = g.size();
    const double vol = g.cell_volume();
    TripletAccumulator K(n);

    for (int a = 0; a < g.dim(); ++a) {
        const double s = vol / (g.axis(a).dx * g.axis(a).dx);
        for (std::int64_t p = 0; p < n; ++p) {
            int ia[2];
            g.unpack(p, ia[0], ia[1]);
            // forward face
            if (g.axis(a).periodic || ia[a] < g.axis(a).n - 1) {
                std::int64_t q = g.neighbor(p, a, +1);
                double cf = 0.5 * (coeffs.axis[a][p] + coeffs.axis[a][q]) * s;
                K.add(p, p, cf);
                K.add(q, q, cf);
                K.add(p, q, -cf);
                K.add(q, p, -cf);
            } else {
                // wall face at the high edge, zero ghost
                K.add(p, p, coeffs.axis[a][p] * s);
            }
            if (!g.axis(a).periodic && ia[a] == 0) K.add(p, p, coeffs.axis[a][p] * s);
        }
    }

    if (coeffs.has_cross) {
        const double d0 = 2.0 * g.axis(0).dx, d1 = 2.0 * g.axis(1).dx;
        for (std::int64_t i = 0; i < n; ++i) {
            double cc = coeffs.cross[i] * vol;
            if (cc == 0.0) continue;
            CenteredPair n0 = centered(g, i, 0), n1 = centered(g, i, 1);
            const std::int64_t p[2] = {n0.prev, n0.next};
            const double s0[2] = {-1.0 / d0, 1.0 / d0};
            const std::int64_t q[2] = {n1.prev, n1.next};
            const double s1[2] = {-1.0 / d1, 1.0 / d1};
            for (int u = 0; u < 2; ++u) {
                if (p[u] < 0) continue;
                for (int v = 0; v < 2; ++v) {
                    if (q[v] < 0) continue;
                    double w = cc * s0[u] * s1[v];
                    K.add(p[u], q[v], w);
                    K.add(q[v], p[u], w);
                }
            }
        }
    }

    SparseOperator K_op = K.build({}, form, grid);

    // A = sign * W^{-1} K (+ diagonal)
    std::vector<double> W(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) W[i] = density[i] * vol;
    for (std::int64_t i = 0; i < n; ++i) {
        double inv = sign / W[i];
        for (std::int64_t k = K_op.row_ptr[i]; k < K_op.row_ptr[i + 1]; ++k) K_op.val[k] *= inv;
    }
    if (diagonal) {
        TripletAccumulator A(n);
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t k = K_op.row_ptr[i]; k < K_op.row_ptr[i + 1]; ++k)
                A.add(i, K_op.col[k], K_op.val[k]);
            A.add(i, i, (*diagonal)[i]);
        }
        return A.build(std::move(W), form, grid);
    }
    K_op.weight = std::move(W);
    return K_op;
}

double diffusion_energy(const GridPtr& grid, const DiffusionCoefficients& coeffs,
                        std::span<const double> u, std::span<const double> v) {
    const Grid& g = *grid;
    const std::int64_t n = g.size();
    const double vol = g.cell_volume();
    double acc = 0.0;

    for (int a = 0; a < g.dim(); ++a) {
        const double s = vol / (g.axis(a).dx * g.axis(a).dx);
        for (std::int64_t p = 0; p < n; ++p) {
            int ia[2];
            g.unpack(p, ia[0], ia[1]);
            if (g.axis(a).periodic || ia[a] < g.axis(a).n - 1) {
                std::int64_t q = g.neighbor(p, a, +1);
                double cf = 0.5 * (coeffs.axis[a][p] + coeffs.axis[a][q]) * s;
                acc += cf * (u[q] - u[p]) * (v[q] - v[p]);
            } else {
                acc += coeffs.axis[a][p] * s * u[p] * v[p];
            }
            if (!g.axis(a).periodic && ia[a] == 0) acc += coeffs.axis[a][p] * s * u[p] * v[p];
        }
    }

    if (coeffs.has_cross) {
        const double d0 = 2.0 * g.axis(0).dx, d1 = 2.0 * g.axis(1).dx;
        auto diff = [&](std::span<const double> f, std::int64_t i, int axis, double d) {
            CenteredPair nb = centered(g, i, axis);
            double lo = nb.prev >= 0 ? f[nb.prev] : 0.0;
            double hi = nb.next >= 0 ? f[nb.next] : 0.0;
            return (hi - lo) / d;
        };
        for (std::int64_t i = 0; i < n; ++i) {
            double cc = coeffs.cross[i] * vol;
            if (cc == 0.0) continue;
            acc += cc * (diff(u, i, 0, d0) * diff(v, i, 1, d1) + diff(u, i, 1, d1) * diff(v, i, 0, d0));
        }
    }
    return acc;
}

SparseOperator assemble_weighted_laplacian(const WeightedManifold& wm) {
    return assemble_divergence_form(wm.grid, diffusion_coefficients(wm), wm.weight.values, -1.0);
}

double green_formula_residual(const SparseOperator& lap, const ScalarField& u,
                              const ScalarField& v, const WeightedManifold& wm) {
    std::vector<double> lv = lap.apply(v.values);
    double lhs = weighted_inner_product(std::span<const double>(u.values),
                                        std::span<const double>(lv), wm);
    double rhs = -diffusion_energy(wm.grid, diffusion_coefficients(wm),
                                   std::span<const double>(u.values),
                                   std::span<const double>(v.values));
    return std::fabs(lhs - rhs);
}

SparseOperator assemble_spatial_kg(const ScalarField& lapse, const MetricField& h,
                                   const ScalarField& potential) {
    WeightedManifold opt = optical_manifold(lapse, h);
    std::vector<double> scaled(lapse.values.size());
    for (size_t i = 0; i < scaled.size(); ++i)
        scaled[i] = lapse.values[i] * lapse.values[i] * potential.values[i];
    // -Lap_tilde + N^2 V
    return assemble_divergence_form(opt.grid, diffusion_coefficients(opt), opt.weight.values, +1.0,
                                    &scaled);
}

SparseOperator assemble_spatial_kg_expanded(const ScalarField& lapse, const MetricField& h,
                                            const ScalarField& potential) {
    const Grid& g = *h.grid;
    const std::int64_t n = g.size();

    // unweighted Laplace-Beltrami of h
    WeightedManifold plain = WeightedManifold::from_density(ScalarField::constant(h.grid, 1.0), h);
    SparseOperator lap_h = assemble_weighted_laplacian(plain);

    // dN along each axis: centered in the interior, one-sided at walls
    std::array<std::vector<double>, 2> dN;
    for (int a = 0; a < g.dim(); ++a) {
        dN[a].resize(static_cast<size_t>(n));
        const double dx = g.axis(a).dx;
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t prev = g.neighbor(i, a, -1), next = g.neighbor(i, a, +1);
            if (prev >= 0 && next >= 0)
                dN[a][i] = (lapse.values[next] - lapse.values[prev]) / (2.0 * dx);
            else if (next >= 0)
                dN[a][i] = (lapse.values[next] - lapse.values[i]) / dx;
            else
                dN[a][i] = (lapse.values[i] - lapse.values[prev]) / dx;
        }
    }

    TripletAccumulator A(n);
    for (std::int64_t i = 0; i < n; ++i) {
        double N2 = lapse.values[i] * lapse.values[i];
        for (std::int64_t k = lap_h.row_ptr[i]; k < lap_h.row_ptr[i + 1]; ++k)
            A.add(i, lap_h.col[k], -N2 * lap_h.val[k]);
        A.add(i, i, N2 * potential.values[i]);
        // -N h^{ab} (d_a N) (d_b .)
        for (int b = 0; b < g.dim(); ++b) {
            double sb = 0.0;
            for (int a = 0; a < g.dim(); ++a) sb += h.inverse(i, a, b) * dN[a][i];
            double coef = -lapse.values[i] * sb / (2.0 * g.axis(b).dx);
            std::int64_t prev = g.neighbor(i, b, -1), next = g.neighbor(i, b, +1);
            if (next >= 0) A.add(i, next, coef);
            if (prev >= 0) A.add(i, prev, -coef);
        }
    }

    WeightedManifold opt = optical_manifold(lapse, h);
    std::vector<double> W(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) W[i] = opt.weight.values[i] * g.cell_volume();
    return A.build(std::move(W), AssemblyForm::expanded, h.grid);
}

}  // namespace cauchy
