#include "cauchy/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "cauchy/util.hpp"

namespace cauchy {

namespace {

constexpr std::int64_t kDenseLimit = 512;

// y = D A D^-1 x with D = diag(sqrt(W)); symmetric up to rounding.
struct SymmetrizedOp {
    const SparseOperator& a;
    std::vector<double> dsqrt, dinv;

    explicit SymmetrizedOp(const SparseOperator& op) : a(op) {
        dsqrt.resize(static_cast<size_t>(op.n));
        dinv.resize(static_cast<size_t>(op.n));
        for (std::int64_t i = 0; i < op.n; ++i) {
            dsqrt[i] = std::sqrt(op.weight[i]);
            dinv[i] = 1.0 / dsqrt[i];
        }
    }

    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        for (std::int64_t i = 0; i < a.n; ++i) {
            double acc = 0.0;
            for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
                acc += a.val[k] * dinv[a.col[k]] * x[a.col[k]];
            y[i] = dsqrt[i] * acc;
        }
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(a.n, a.n);
        for (std::int64_t i = 0; i < a.n; ++i)
            for (std::int64_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
                M(i, a.col[k]) = dsqrt[i] * a.val[k] * dinv[a.col[k]];
        return 0.5 * (M + M.transpose());
    }
};

double residual_tolerance(double lambda) { return 1e-8 * std::fabs(lambda) + 1e-12; }

void finalize(SpectralSummary& s) {
    s.positive_definite = !s.eigenvalues.empty() && s.eigenvalues.front() > 0.0;
    s.gap = s.eigenvalues.size() >= 2 ? s.eigenvalues[1] - s.eigenvalues[0] : 0.0;
}

SpectralSummary dense_path(const SparseOperator& op, int k, const SymmetrizedOp& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym.dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");

    SpectralSummary s;
    s.method = "dense";
    Eigen::VectorXd y(op.n);
    for (int j = 0; j < k; ++j) {
        double lambda = es.eigenvalues()[j];
        Eigen::VectorXd z = es.eigenvectors().col(j);
        sym.apply(z, y);
        double res = (y - lambda * z).norm();
        s.eigenvalues.push_back(lambda);
        s.residuals.push_back(res);
        std::vector<double> v(static_cast<size_t>(op.n));
        for (std::int64_t i = 0; i < op.n; ++i) v[i] = sym.dinv[i] * z[i];
        s.vectors.push_back(std::move(v));
    }
    finalize(s);
    return s;
}

SpectralSummary lanczos_path(const SparseOperator& op, int k, const SymmetrizedOp& sym) {
    const std::int64_t n = op.n;
    const std::int64_t cap = std::min<std::int64_t>(n, 2048);
    std::int64_t m = std::min<std::int64_t>(n, std::max<std::int64_t>(6 * k, 80));

    SpectralSummary best;
    for (;; m = std::min(cap, 2 * m)) {
        // full reorthogonalization against all previous vectors, two passes
        std::vector<Eigen::VectorXd> basis;
        basis.reserve(static_cast<size_t>(m) + 1);
        std::vector<double> alpha, beta;

        Rng rng(0x5eedULL);
        Eigen::VectorXd v(n);
        for (std::int64_t i = 0; i < n; ++i) v[i] = rng.uniform(-1, 1);
        v.normalize();
        basis.push_back(v);

        Eigen::VectorXd w(n);
        std::int64_t steps = 0;
        for (std::int64_t j = 0; j < m; ++j) {
            sym.apply(basis[j], w);
            double a = basis[j].dot(w);
            alpha.push_back(a);
            w -= a * basis[j];
            if (j > 0) w -= beta[j - 1] * basis[j - 1];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) w -= q.dot(w) * q;
            double b = w.norm();
            steps = j + 1;
            if (b < 1e-14) break;  // invariant subspace found
            beta.push_back(b);
            basis.push_back(w / b);
        }

        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
        for (std::int64_t j = 0; j < steps; ++j) {
            T(j, j) = alpha[j];
            if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        int avail = static_cast<int>(std::min<std::int64_t>(k, steps));

        SpectralSummary s;
        s.method = "lanczos";
        bool ok = true;
        Eigen::VectorXd y(n);
        for (int j = 0; j < avail; ++j) {
            double lambda = es.eigenvalues()[j];
            Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
            for (std::int64_t i = 0; i < steps; ++i) z += es.eigenvectors()(i, j) * basis[i];
            z.normalize();
            sym.apply(z, y);
            double res = (y - lambda * z).norm();
            if (res > residual_tolerance(lambda)) ok = false;
            s.eigenvalues.push_back(lambda);
            s.residuals.push_back(res);
            std::vector<double> vec(static_cast<size_t>(n));
            for (std::int64_t i = 0; i < n; ++i) vec[i] = sym.dinv[i] * z[i];
            s.vectors.push_back(std::move(vec));
        }
        finalize(s);
        if (ok && avail == k) return s;
        best = std::move(s);
        if (m >= cap || steps < m) break;
    }
    std::string msg = "eigensolver did not converge; best residuals:";
    for (double r : best.residuals) msg += " " + std::to_string(r);
    throw std::runtime_error(msg);
}

}  // namespace

SpectralSummary smallest_eigenpairs(const SparseOperator& op, int k) {
    if (k < 1 || k > op.n) throw std::invalid_argument("bad eigenpair count");
    SymmetrizedOp sym(op);
    return op.n <= kDenseLimit ? dense_path(op, k, sym) : lanczos_path(op, k, sym);
}

double largest_eigenvalue_estimate(const SparseOperator& op, int iterations) {
    SymmetrizedOp sym(op);
    Rng rng(0xabcdULL);
    Eigen::VectorXd v(op.n), w(op.n);
    for (std::int64_t i = 0; i < op.n; ++i) v[i] = rng.uniform(-1, 1);
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        sym.apply(v, w);
        lambda = v.dot(w);
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
    }
    sym.apply(v, w);
    return std::max(lambda, v.dot(w));
}

std::vector<double> DenseOperator::apply(const std::vector<double>& x) const {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<std::int64_t>(x.size()));
    Eigen::VectorXd y = mat * xv;
    return std::vector<double>(y.data(), y.data() + y.size());
}

SqrtInverse operator_sqrt_inverse(const SparseOperator& op, const SpectralSummary& summary) {
    if (op.n > kDenseLimit)
        throw std::invalid_argument("operator too large for dense square root (limit 512)");
    if (!summary.positive_definite || summary.eigenvalues.empty() ||
        summary.eigenvalues.front() <= 0.0)
        throw std::runtime_error(
            "operator not strictly positive (lambda_min = " +
            std::to_string(summary.eigenvalues.empty() ? 0.0 : summary.eigenvalues.front()) +
            "); square root refused");

    SymmetrizedOp sym(op);
    Eigen::MatrixXd S = sym.dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    if (es.eigenvalues()[0] <= 0.0)
        throw std::runtime_error("operator not strictly positive (lambda_min = " +
                                 std::to_string(es.eigenvalues()[0]) + "); square root refused");

    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::MatrixXd Q = es.eigenvectors();
    Eigen::MatrixXd Shalf = Q * lam.array().sqrt().matrix().asDiagonal() * Q.transpose();
    Eigen::MatrixXd Sinv = Q * lam.array().inverse().matrix().asDiagonal() * Q.transpose();

    SqrtInverse out;
    out.sqrt_reconstruction_error = (Shalf * Shalf - S).norm() / S.norm();
    out.inverse_reconstruction_error =
        (Sinv * S - Eigen::MatrixXd::Identity(op.n, op.n)).norm() / std::sqrt(double(op.n));

    // back to the weighted space: A_f = D^-1 f(S) D
    Eigen::VectorXd d(op.n), dinv(op.n);
    for (std::int64_t i = 0; i < op.n; ++i) {
        d[i] = sym.dsqrt[i];
        dinv[i] = sym.dinv[i];
    }
    out.sqrt_op.mat = dinv.asDiagonal() * Shalf * d.asDiagonal();
    out.inverse_op.mat = dinv.asDiagonal() * Sinv * d.asDiagonal();
    out.sqrt_op.weight = op.weight;
    out.inverse_op.weight = op.weight;
    return out;
}

}  // namespace cauchy
