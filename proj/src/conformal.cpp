#include "cauchy/conformal.hpp"

#include <stdexcept>

namespace cauchy {

void ConformalPair::validate() const {
    std::int64_t bad = a.first_nonpositive();
    if (bad >= 0) throw std::runtime_error("conformal factor a not positive at node " + std::to_string(bad));
    bad = b.first_nonpositive();
    if (bad >= 0) throw std::runtime_error("conformal factor b not positive at node " + std::to_string(bad));
}

WeightedManifold conformal_transform(const WeightedManifold& wm, const ConformalPair& cp) {
    cp.validate();
    if (!(*cp.a.grid == *wm.grid) || !(*cp.b.grid == *wm.grid))
        throw std::invalid_argument("grid mismatch in conformal_transform");

    MetricField h = wm.metric;
    std::vector<double> m(wm.weight.values.size());
    for (size_t i = 0; i < m.size(); ++i) {
        h.c00[i] = wm.metric.c00[i] * cp.a.values[i];
        if (h.dim == 2) {
            h.c11[i] = wm.metric.c11[i] * cp.a.values[i];
            h.c01[i] = wm.metric.c01[i] * cp.a.values[i];
        }
        m[i] = wm.weight.values[i] * cp.b.values[i];
    }
    h.closed_form = {};
    h.source = {};
    return WeightedManifold::from_weight(h, ScalarField::from_values(wm.grid, std::move(m)));
}

SparseOperator divergence_form_laplacian(const WeightedManifold& wm, const ConformalPair& cp) {
    cp.validate();
    const Grid& g = *wm.grid;
    DiffusionCoefficients c = diffusion_coefficients(wm);
    std::vector<double> density(wm.weight.values.size());
    for (std::int64_t i = 0; i < g.size(); ++i) {
        double r = cp.b.values[i] / cp.a.values[i];
        for (int a = 0; a < g.dim(); ++a) c.axis[a][i] *= r;
        if (c.has_cross) c.cross[i] *= r;
        density[i] = cp.b.values[i] * wm.weight.values[i];
    }
    return assemble_divergence_form(wm.grid, c, density, -1.0);
}

double lapse_rescaling_identity_residual(const ScalarField& lapse, const MetricField& h) {
    SparseOperator direct = assemble_weighted_laplacian(optical_manifold(lapse, h));
    SparseOperator weighted = assemble_weighted_laplacian(WeightedManifold::from_density(lapse, h));
    for (std::int64_t i = 0; i < weighted.n; ++i) {
        double n2 = lapse.values[i] * lapse.values[i];
        for (std::int64_t k = weighted.row_ptr[i]; k < weighted.row_ptr[i + 1]; ++k)
            weighted.val[k] *= n2;
    }
    return relative_difference(direct, weighted);
}

}  // namespace cauchy
