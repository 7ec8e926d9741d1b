#pragma once

#include <optional>
#include <span>

#include "cauchy/field.hpp"

namespace cauchy {

// (grid, metric, measure). The measure is stored as the full coordinate
// density m = rho * sqrt(det h), i.e. integral f dmu = sum f * m * cellvol.
struct WeightedManifold {
    GridPtr grid;
    MetricField metric;
    ScalarField weight;

    static WeightedManifold from_density(const ScalarField& rho, const MetricField& h);
    static WeightedManifold from_weight(const MetricField& h, const ScalarField& m);

    void validate() const;  // weight > 0, metric SPD
};

double weighted_inner_product(const ScalarField& u, const ScalarField& v,
                              const WeightedManifold& wm);
double weighted_inner_product(std::span<const double> u, std::span<const double> v,
                              const WeightedManifold& wm);

// Lapse-rescaled companion manifold (N^-2 h, measure density N^-1 sqrt(det h)).
// This is the geometry in which the spatial wave operator becomes a plain
// weighted Laplacian plus a diagonal potential.
WeightedManifold optical_manifold(const ScalarField& lapse, const MetricField& h);

struct SliceData {
    double time = 0.0;
    GridPtr grid;
    ScalarField lapse;
    MetricField metric;
    ScalarField potential;
};

// Time-sampled lapse/metric/potential over one grid. Descriptor trees, when
// available, allow exact time derivatives and off-sample evaluation.
struct Foliation {
    GridPtr grid;
    std::vector<double> times;
    std::vector<ScalarField> lapse;
    std::vector<MetricField> metric;
    std::vector<ScalarField> potential;

    ExprPtr lapse_expr;
    std::array<ExprPtr, 3> metric_expr{};
    ExprPtr potential_expr;
    std::string lapse_src;
    std::array<std::string, 3> metric_src{};
    std::string potential_src;

    bool has_descriptors() const { return lapse_expr != nullptr; }
    bool time_dependent() const;

    static Foliation from_descriptors(GridPtr g, ExprPtr lapse, std::string lapse_src,
                                      std::array<ExprPtr, 3> metric, std::array<std::string, 3> metric_src,
                                      ExprPtr potential, std::string potential_src,
                                      const std::vector<double>& times);

    SliceData slice(int k) const;
    SliceData slice_at(double t) const;  // descriptor evaluation, or nearest sample

    void validate() const;  // N > 0 at every sample, shared grid, SPD metrics
};

}  // namespace cauchy
