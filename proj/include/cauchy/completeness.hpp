#pragma once

#include <array>
#include <optional>
#include <string>

#include "cauchy/manifold.hpp"

namespace cauchy {

enum class EndVerdict { complete, incomplete, inconclusive };
enum class TailVerdict { convergent, divergent, inconclusive };

// Window-increment classifier shared by the length integrals and the local
// integrability probe. Convergent when the tail is dominated by a geometric
// series with ratio < 0.9; divergent when increments do not decay (the
// log-density and slower cases); inconclusive in between.
TailVerdict classify_increments(const std::vector<double>& increments);

struct EndEvidence {
    int axis = 0;
    bool high_side = true;
    double target = 0.0;  // coordinate of the end, may be +/-infinity
    EndVerdict verdict = EndVerdict::inconclusive;
    std::vector<double> cutoffs;
    std::vector<double> lengths;                 // partial length at each cutoff
    double total_length_estimate = 0.0;          // finite for incomplete ends
    std::string note;
};

// Classifies one end of a 1D manifold by the growth of the metric length
// integral of sqrt(h11)/N from `from` toward `target`.
EndEvidence end_length_1d(const ExprPtr& lapse, const ExprPtr& h11, double from, double target,
                          int axis, bool high_side, double slice_time = 0.0, int windows = 14);

struct GeodesicResult {
    bool escaped = false;
    double escape_parameter = 0.0;
    double speed_drift = 0.0;  // relative drift of the metric speed
    double parameter_reached = 0.0;
    std::array<double, 2> final_position{};
    std::string note;
};

// Integrates the geodesic equation of a closed-form 2D metric with RK4 and a
// displacement-capped step. Escape through an open side within the affine
// budget is incompleteness evidence; staying inside proves nothing.
GeodesicResult shoot_geodesic(const std::array<ExprPtr, 3>& metric, const GridPtr& grid,
                              std::array<double, 2> x0, std::array<double, 2> v0, double t_max,
                              double dt, double slice_time = 0.0);

struct BoundsReport {
    double alpha_lo = 0.0, alpha_hi = 0.0;  // lapse range over samples
    double A = 1.0, D = 1.0;                // metric pencil range vs the first slice
    bool lapse_unbounded = false;
    bool metric_unbounded = false;
    bool conformal = false;
    int time_samples = 0;
    std::string notes;
};

// Lapse bounds and the metric-equivalence constants of the foliation against
// its first slice; with `conformal` set the lapse-rescaled metric is tested
// instead. Unbounded flags are window-relative heuristics (monotone growth
// beyond 10x without saturation).
BoundsReport check_foliation_bounds(const Foliation& fol, bool conformal);

struct CompletenessInputs {
    GridPtr grid;
    bool asserted_globally_hyperbolic = false;
    bool time_independent = false;
    double slice_time = 0.0;
    ExprPtr lapse;
    std::array<ExprPtr, 3> metric{};
    const Foliation* foliation = nullptr;  // enables the bounds route when time-dependent
};

struct CompletenessVerdict {
    EndVerdict overall = EndVerdict::inconclusive;
    std::string provenance;  // by-theorem | by-direct-check | compactness | inconclusive
    std::vector<EndEvidence> ends;
    std::optional<BoundsReport> bounds;
    std::optional<double> min_escape_parameter;
    std::string note;
};

CompletenessVerdict completeness_verdict(const CompletenessInputs& in);

const char* to_string(EndVerdict v);

}  // namespace cauchy
