#pragma once

#include "cauchy/operators.hpp"

namespace cauchy {

// Data on one slice: field value and normal momentum (momentum = time
// derivative divided by the lapse).
struct CauchyData {
    ScalarField phi;
    ScalarField pi;

    void validate() const;
};

struct TrajectorySample {
    double t;
    std::vector<double> phi;
    std::vector<double> pi;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<double> energy;  // quadratic invariant per sample (static runs)
    double energy_drift = 0.0;
};

// Damping coefficient of the first-order-in-time form: the log-derivative of
// the rescaled measure density. Exact when descriptors exist, centered
// finite differences over the samples otherwise.
ScalarField friction_coefficient(const Foliation& fol, double t);

// RK4 integration of phi_tt + f phi_t + w2(t) phi = 0 as a first-order
// system, reassembling w2 at stage times (memoized). Refuses time steps
// beyond half the inverse frequency top: dt <= 0.5 / sqrt(lambda_max).
Trajectory evolve_kg(const CauchyData& data, const Foliation& fol, double t0, double t1,
                     double dt, int snapshot_stride = 0);

// sum (pi1 phi2 - pi2 phi1) sqrt(det h) cellvol; antisymmetric, bilinear.
double symplectic_form(const CauchyData& d1, const CauchyData& d2, const MetricField& h);

struct DriftReport {
    double drift = 0.0;   // max |Omega(t) - Omega(t0)| (relative when Omega(t0) is not tiny)
    bool relative = true;
    std::vector<double> times;
    std::vector<double> omegas;
};

// Evolves both data sets and tracks the symplectic pairing slice by slice,
// using the metric of each slice.
DriftReport symplectic_drift(const CauchyData& d1, const CauchyData& d2, const Foliation& fol,
                             double t0, double t1, double dt);

}  // namespace cauchy
