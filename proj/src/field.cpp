#include "cauchy/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cauchy {

ScalarField ScalarField::constant(GridPtr g, double v) {
    ScalarField f;
    f.values.assign(static_cast<size_t>(g->size()), v);
    f.grid = std::move(g);
    f.closed_form = make_constant(v);
    f.source = std::to_string(v);
    return f;
}

ScalarField ScalarField::from_values(GridPtr g, std::vector<double> v) {
    if (static_cast<std::int64_t>(v.size()) != g->size())
        throw std::invalid_argument("field length does not match node count");
    ScalarField f;
    f.grid = std::move(g);
    f.values = std::move(v);
    return f;
}

ScalarField ScalarField::from_expression(GridPtr g, const ExprPtr& e, std::string src, double t) {
    ScalarField f;
    f.values.resize(static_cast<size_t>(g->size()));
    for (std::int64_t i = 0; i < g->size(); ++i) {
        double x, y;
        g->node(i, x, y);
        f.values[static_cast<size_t>(i)] = eval(e, x, y, t);
    }
    f.grid = std::move(g);
    f.closed_form = e;
    f.source = std::move(src);
    f.markers = singular_markers(e);
    return f;
}

double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }

bool ScalarField::positive(double tol) const { return first_nonpositive(tol) < 0; }

std::int64_t ScalarField::first_nonpositive(double tol) const {
    for (size_t i = 0; i < values.size(); ++i)
        if (!(values[i] > tol)) return static_cast<std::int64_t>(i);
    return -1;
}

MetricField MetricField::identity(GridPtr g) {
    MetricField m;
    m.dim = g->dim();
    size_t n = static_cast<size_t>(g->size());
    m.c00.assign(n, 1.0);
    if (m.dim == 2) {
        m.c11.assign(n, 1.0);
        m.c01.assign(n, 0.0);
    }
    m.grid = std::move(g);
    m.closed_form = {make_constant(1.0), make_constant(1.0), make_constant(0.0)};
    m.source = {"1", "1", "0"};
    return m;
}

MetricField MetricField::from_expressions(GridPtr g, const std::array<ExprPtr, 3>& e,
                                          const std::array<std::string, 3>& src, double t) {
    MetricField m;
    m.dim = g->dim();
    size_t n = static_cast<size_t>(g->size());
    m.c00.resize(n);
    if (m.dim == 2) {
        m.c11.resize(n);
        m.c01.resize(n);
    }
    for (std::int64_t i = 0; i < g->size(); ++i) {
        double x, y;
        g->node(i, x, y);
        m.c00[static_cast<size_t>(i)] = eval(e[0], x, y, t);
        if (m.dim == 2) {
            m.c11[static_cast<size_t>(i)] = eval(e[1], x, y, t);
            m.c01[static_cast<size_t>(i)] = eval(e[2], x, y, t);
        }
    }
    m.grid = std::move(g);
    m.closed_form = e;
    m.source = src;
    return m;
}

MetricField MetricField::isotropic(GridPtr g, const ScalarField& factor) {
    MetricField m = MetricField::identity(g);
    for (size_t i = 0; i < m.c00.size(); ++i) {
        m.c00[i] = factor.values[i];
        if (m.dim == 2) m.c11[i] = factor.values[i];
    }
    m.closed_form = {factor.closed_form, factor.closed_form, make_constant(0.0)};
    m.source = {factor.source, factor.source, "0"};
    return m;
}

double MetricField::component(std::int64_t i, int a, int b) const {
    size_t k = static_cast<size_t>(i);
    if (a == b) return a == 0 ? c00[k] : c11[k];
    return c01[k];
}

double MetricField::det(std::int64_t i) const {
    size_t k = static_cast<size_t>(i);
    if (dim == 1) return c00[k];
    return c00[k] * c11[k] - c01[k] * c01[k];
}

double MetricField::sqrt_det(std::int64_t i) const { return std::sqrt(det(i)); }

double MetricField::inverse(std::int64_t i, int a, int b) const {
    size_t k = static_cast<size_t>(i);
    if (dim == 1) return 1.0 / c00[k];
    double d = det(i);
    if (a == 0 && b == 0) return c11[k] / d;
    if (a == 1 && b == 1) return c00[k] / d;
    return -c01[k] / d;
}

double MetricField::min_eigenvalue(std::int64_t i) const {
    size_t k = static_cast<size_t>(i);
    if (dim == 1) return c00[k];
    double tr = c00[k] + c11[k];
    double df = c00[k] - c11[k];
    double disc = std::sqrt(df * df + 4.0 * c01[k] * c01[k]);
    return 0.5 * (tr - disc);
}

bool MetricField::has_cross_terms() const {
    if (dim == 1) return false;
    for (double v : c01)
        if (v != 0.0) return true;
    return false;
}

void MetricField::check_spd(double tol) const {
    for (std::int64_t i = 0; i < grid->size(); ++i) {
        if (min_eigenvalue(i) <= tol || det(i) <= 0.0) {
            double x, y;
            grid->node(i, x, y);
            throw std::runtime_error("metric not positive definite at node " + std::to_string(i) +
                                     " (x=" + std::to_string(x) + ", y=" + std::to_string(y) + ")");
        }
    }
}

}  // namespace cauchy
