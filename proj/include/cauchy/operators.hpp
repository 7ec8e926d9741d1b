#pragma once

#include "cauchy/manifold.hpp"
#include "cauchy/sparse.hpp"

namespace cauchy {

// Node products that get averaged onto faces: axis[a][i] = density * h^{aa}
// (times any conformal factor), cross[i] = density * h^{01}.
struct DiffusionCoefficients {
    std::array<std::vector<double>, 2> axis;
    std::vector<double> cross;
    bool has_cross = false;
};

DiffusionCoefficients diffusion_coefficients(const WeightedManifold& wm);

// div(c grad)-type assembly: A = sign * W^{-1} K with K the summation-by-parts
// stiffness built from face-averaged coefficients (axis terms) and
// symmetrized centered products (cross terms). W_i = density_i * cellvol.
// Truncated and open edges extend functions by zero.
SparseOperator assemble_divergence_form(const GridPtr& grid, const DiffusionCoefficients& coeffs,
                                        const std::vector<double>& density, double sign,
                                        const std::vector<double>* diagonal = nullptr,
                                        AssemblyForm form = AssemblyForm::divergence);

// Energy form B(u, v) = sum_faces c_f du dv vol/dx^2 + cross products; equals
// -<u, Lap v>_W by construction of the stencil.
double diffusion_energy(const GridPtr& grid, const DiffusionCoefficients& coeffs,
                        std::span<const double> u, std::span<const double> v);

// Discrete weighted Laplacian of (grid, h, mu): negative semi-definite in the
// W inner product; constants lie in its kernel on periodic grids.
SparseOperator assemble_weighted_laplacian(const WeightedManifold& wm);

// |<u, Lap v>_mu + B(u, v)|, the summation-by-parts identity defect.
double green_formula_residual(const SparseOperator& lap, const ScalarField& u,
                              const ScalarField& v, const WeightedManifold& wm);

// Spatial wave operator: lapse-rescaled Laplacian plus scaled potential,
// symmetric in the lapse-rescaled measure. Divergence form.
SparseOperator assemble_spatial_kg(const ScalarField& lapse, const MetricField& h,
                                   const ScalarField& potential);

// Same operator from the expanded product-rule form with centered first
// derivatives; agrees with the divergence form to O(dx^2) but is not
// weighted-symmetric for non-constant lapse. Cross-validation only.
SparseOperator assemble_spatial_kg_expanded(const ScalarField& lapse, const MetricField& h,
                                            const ScalarField& potential);

}  // namespace cauchy
