#pragma once

#include <optional>

#include "cauchy/completeness.hpp"
#include "cauchy/sparse.hpp"

namespace cauchy {

enum class L2locVerdict { integrable, non_integrable, inconclusive };

struct SingularityReport {
    double x0 = 0.0;
    double p = 0.0;
    bool analytic_integrable = false;  // 2p < d
    TailVerdict numeric;               // neighborhood-integral fit
    L2locVerdict verdict = L2locVerdict::inconclusive;
};

// Node-wise split of the scaled potential N^2 V into nonnegative and
// nonpositive parts, plus a local square-integrability verdict against the
// lapse-rescaled measure.
struct PotentialClassification {
    std::vector<double> scaled;   // N^2 V
    std::vector<double> v_plus;   // max(N^2 V, 0)
    std::vector<double> v_minus;  // min(N^2 V, 0)
    L2locVerdict verdict = L2locVerdict::inconclusive;
    std::vector<SingularityReport> singularities;
    std::string note;
};

PotentialClassification classify_l2loc(const ScalarField& potential, const ScalarField& lapse,
                                       const MetricField& h);

struct SemiboundedReport {
    double c = 0.0;       // best certified lower bound of the window operator
    double c_diagonal = 0.0;
    std::optional<double> c_eigen;
    std::string method;   // eigensolve | diagonal-bound
    std::string trend;    // compact | no-decrease | decreasing | strongly-decreasing | unknown
    bool verified = false;
    std::string note;
};

// Lower bound for the assembled operator (diagonal floor vs smallest
// eigenvalue), plus a descriptor-based look beyond the window: on non-compact
// grids the scaled potential is sampled past the edges, and a strong downward
// trend disqualifies the window bound from standing in for the manifold.
SemiboundedReport semibounded_constant(const SparseOperator& w2, const ScalarField& potential,
                                       const ScalarField& lapse, const ExprPtr& potential_expr,
                                       const ExprPtr& lapse_expr);

struct CertificateInputs {
    GridPtr grid;
    SliceData slice;
    ExprPtr lapse_expr;
    std::array<ExprPtr, 3> metric_expr{};
    ExprPtr potential_expr;
    bool asserted_globally_hyperbolic = false;
    bool time_independent = false;
    const Foliation* foliation = nullptr;
};

struct CertificateReport {
    double slice_time = 0.0;
    CompletenessVerdict completeness;
    PotentialClassification potential;
    SemiboundedReport semibounded;
    bool strictly_positive = false;
    double positivity_eps = 0.0;  // min of V over the grid
    double lambda_min = 0.0;
    std::string overall;  // hypotheses-verified | hypothesis-failed(<name>) | inconclusive
};

CertificateReport esa_certificate(const CertificateInputs& in);

const char* to_string(L2locVerdict v);

}  // namespace cauchy
