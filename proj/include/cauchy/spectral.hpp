#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "cauchy/sparse.hpp"

namespace cauchy {

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residuals;    // ||A v - lambda v||_W per pair
    std::vector<std::vector<double>> vectors;
    bool positive_definite = false;
    double gap = 0.0;  // lambda_2 - lambda_1 when k >= 2
    std::string method;
    std::vector<double> refinement_lambda_min;  // filled by refinement drivers
};

// k smallest eigenpairs of a weighted-symmetric operator. The problem is
// symmetrized with W^(1/2); up to 512 rows a dense solve is used, above that
// a Lanczos iteration with full reorthogonalization. Residuals are pushed
// below 1e-8 |lambda| + 1e-12 or an error carrying the best residuals is
// thrown.
SpectralSummary smallest_eigenpairs(const SparseOperator& op, int k);

// Rough upper bound of the spectrum by power iteration on the symmetrized
// operator; used for time-step stability limits.
double largest_eigenvalue_estimate(const SparseOperator& op, int iterations = 60);

// Dense operator in the same weighted space.
struct DenseOperator {
    Eigen::MatrixXd mat;
    std::vector<double> weight;
    std::vector<double> apply(const std::vector<double>& x) const;
};

struct SqrtInverse {
    DenseOperator sqrt_op;
    DenseOperator inverse_op;
    double sqrt_reconstruction_error;     // ||sqrt*sqrt - A|| / ||A||
    double inverse_reconstruction_error;  // ||inv*A - I||
};

// Spectral square root and inverse for strictly positive operators,
// n <= 512 only. Throws when the operator is not positive definite, citing
// the offending lambda_min.
SqrtInverse operator_sqrt_inverse(const SparseOperator& op, const SpectralSummary& summary);

}  // namespace cauchy
