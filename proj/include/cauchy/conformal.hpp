#pragma once

#include "cauchy/operators.hpp"

namespace cauchy {

// Node-wise rescaling pair: metric -> a h, measure -> b mu.
struct ConformalPair {
    ScalarField a;
    ScalarField b;

    void validate() const;
};

WeightedManifold conformal_transform(const WeightedManifold& wm, const ConformalPair& cp);

// Laplacian of the rescaled manifold assembled directly from the original
// data, as (1/b) div_mu((b/a) grad). Entry-wise equal to assembling on
// conformal_transform(wm, cp), because both routes average the same node
// products onto faces.
SparseOperator divergence_form_laplacian(const WeightedManifold& wm, const ConformalPair& cp);

// Residual of the identity `lapse-rescaled Laplacian == N^2 times the
// N-weighted Laplacian`, as a max-entry relative difference. Zero up to
// rounding for any positive lapse.
double lapse_rescaling_identity_residual(const ScalarField& lapse, const MetricField& h);

}  // namespace cauchy
