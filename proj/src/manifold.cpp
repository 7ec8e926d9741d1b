#include "cauchy/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace cauchy {

namespace {

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

}  // namespace

WeightedManifold WeightedManifold::from_density(const ScalarField& rho, const MetricField& h) {
    require_same_grid(rho.grid, h.grid, "WeightedManifold::from_density");
    std::vector<double> m(rho.values.size());
    for (std::int64_t i = 0; i < h.grid->size(); ++i)
        m[static_cast<size_t>(i)] = rho.values[static_cast<size_t>(i)] * h.sqrt_det(i);
    WeightedManifold wm{h.grid, h, ScalarField::from_values(h.grid, std::move(m))};
    wm.validate();
    return wm;
}

WeightedManifold WeightedManifold::from_weight(const MetricField& h, const ScalarField& m) {
    require_same_grid(m.grid, h.grid, "WeightedManifold::from_weight");
    WeightedManifold wm{h.grid, h, m};
    wm.validate();
    return wm;
}

void WeightedManifold::validate() const {
    metric.check_spd();
    std::int64_t bad = weight.first_nonpositive();
    if (bad >= 0)
        throw std::runtime_error("measure weight not positive at node " + std::to_string(bad));
}

double weighted_inner_product(const ScalarField& u, const ScalarField& v,
                              const WeightedManifold& wm) {
    require_same_grid(u.grid, wm.grid, "weighted_inner_product");
    require_same_grid(v.grid, wm.grid, "weighted_inner_product");
    return weighted_inner_product(std::span<const double>(u.values),
                                  std::span<const double>(v.values), wm);
}

double weighted_inner_product(std::span<const double> u, std::span<const double> v,
                              const WeightedManifold& wm) {
    if (u.size() != v.size() || static_cast<std::int64_t>(u.size()) != wm.grid->size())
        throw std::invalid_argument("grid mismatch in weighted_inner_product");
    double acc = 0.0;
    const auto& m = wm.weight.values;
    for (size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i] * m[i];
    return acc * wm.grid->cell_volume();
}

WeightedManifold optical_manifold(const ScalarField& lapse, const MetricField& h) {
    require_same_grid(lapse.grid, h.grid, "optical_manifold");
    std::int64_t bad = lapse.first_nonpositive();
    if (bad >= 0)
        throw std::runtime_error("lapse not positive at node " + std::to_string(bad));

    MetricField ht = h;
    std::vector<double> m(lapse.values.size());
    for (std::int64_t i = 0; i < h.grid->size(); ++i) {
        size_t k = static_cast<size_t>(i);
        double inv2 = 1.0 / (lapse.values[k] * lapse.values[k]);
        ht.c00[k] = h.c00[k] * inv2;
        if (h.dim == 2) {
            ht.c11[k] = h.c11[k] * inv2;
            ht.c01[k] = h.c01[k] * inv2;
        }
        m[k] = h.sqrt_det(i) / lapse.values[k];
    }
    ht.closed_form = {};  // component trees no longer describe the rescaled values
    ht.source = {};
    return WeightedManifold::from_weight(ht, ScalarField::from_values(h.grid, std::move(m)));
}

bool Foliation::time_dependent() const {
    if (has_descriptors()) {
        if (depends_on(lapse_expr, 2) || depends_on(potential_expr, 2)) return true;
        for (const auto& e : metric_expr)
            if (e && depends_on(e, 2)) return true;
        return false;
    }
    return times.size() > 1;
}

Foliation Foliation::from_descriptors(GridPtr g, ExprPtr lapse_e, std::string lapse_src,
                                      std::array<ExprPtr, 3> metric_e,
                                      std::array<std::string, 3> metric_src, ExprPtr potential_e,
                                      std::string potential_src, const std::vector<double>& times) {
    if (times.size() < 2) throw std::invalid_argument("foliation needs at least 2 time samples");
    Foliation f;
    f.grid = g;
    f.times = times;
    f.lapse_expr = lapse_e;
    f.metric_expr = metric_e;
    f.potential_expr = potential_e;
    f.lapse_src = std::move(lapse_src);
    f.metric_src = metric_src;
    f.potential_src = std::move(potential_src);
    for (double t : times) {
        f.lapse.push_back(ScalarField::from_expression(g, lapse_e, f.lapse_src, t));
        f.metric.push_back(MetricField::from_expressions(g, metric_e, metric_src, t));
        f.potential.push_back(ScalarField::from_expression(g, potential_e, f.potential_src, t));
    }
    f.validate();
    return f;
}

SliceData Foliation::slice(int k) const {
    return SliceData{times.at(static_cast<size_t>(k)), grid, lapse.at(static_cast<size_t>(k)),
                     metric.at(static_cast<size_t>(k)), potential.at(static_cast<size_t>(k))};
}

SliceData Foliation::slice_at(double t) const {
    if (has_descriptors()) {
        SliceData s;
        s.time = t;
        s.grid = grid;
        s.lapse = ScalarField::from_expression(grid, lapse_expr, lapse_src, t);
        s.metric = MetricField::from_expressions(grid, metric_expr, metric_src, t);
        s.potential = ScalarField::from_expression(grid, potential_expr, potential_src, t);
        return s;
    }
    // nearest stored sample
    size_t best = 0;
    for (size_t k = 1; k < times.size(); ++k)
        if (std::fabs(times[k] - t) < std::fabs(times[best] - t)) best = k;
    return slice(static_cast<int>(best));
}

void Foliation::validate() const {
    for (size_t k = 0; k < times.size(); ++k) {
        if (k > 0 && !(times[k] > times[k - 1]))
            throw std::invalid_argument("foliation times must be strictly increasing");
        require_same_grid(lapse[k].grid, grid, "Foliation");
        require_same_grid(metric[k].grid, grid, "Foliation");
        std::int64_t bad = lapse[k].first_nonpositive();
        if (bad >= 0)
            throw std::runtime_error("lapse not positive at node " + std::to_string(bad) +
                                     ", t=" + std::to_string(times[k]));
        metric[k].check_spd();
    }
}

}  // namespace cauchy
