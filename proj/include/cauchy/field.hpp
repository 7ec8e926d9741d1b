#pragma once

#include <array>
#include <string>
#include <vector>

#include "cauchy/expr.hpp"
#include "cauchy/grid.hpp"

namespace cauchy {

// Node-sampled scalar. When built from an expression the tree is kept so
// that callers can take exact derivatives or evaluate off-grid.
struct ScalarField {
    GridPtr grid;
    std::vector<double> values;
    ExprPtr closed_form;  // null when sampled-only
    std::string source;
    std::vector<SingularMarker> markers;

    static ScalarField constant(GridPtr g, double v);
    static ScalarField from_values(GridPtr g, std::vector<double> v);
    static ScalarField from_expression(GridPtr g, const ExprPtr& e, std::string src, double t = 0.0);

    double min() const;
    double max() const;
    bool positive(double tol = 0.0) const;
    // Index of the first node violating positivity, -1 if none.
    std::int64_t first_nonpositive(double tol = 0.0) const;
};

// Symmetric metric coefficients per node. Components are stored as separate
// arrays: c00 = h_11, and for 2D grids c11 = h_22, c01 = h_12.
struct MetricField {
    GridPtr grid;
    int dim = 1;
    std::vector<double> c00, c11, c01;
    std::array<ExprPtr, 3> closed_form{};  // [h11, h22, h12]
    std::array<std::string, 3> source{};

    static MetricField identity(GridPtr g);
    static MetricField from_expressions(GridPtr g, const std::array<ExprPtr, 3>& e,
                                        const std::array<std::string, 3>& src, double t = 0.0);
    static MetricField isotropic(GridPtr g, const ScalarField& factor);

    double component(std::int64_t i, int a, int b) const;
    double det(std::int64_t i) const;
    double sqrt_det(std::int64_t i) const;
    double inverse(std::int64_t i, int a, int b) const;
    double min_eigenvalue(std::int64_t i) const;

    bool has_cross_terms() const;
    // Throws std::runtime_error naming the first bad node when the metric is
    // not positive definite to tolerance tol.
    void check_spd(double tol = 1e-12) const;
};

}  // namespace cauchy
