#include "cauchy/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cauchy {

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<std::int64_t>(x.size()) != n || static_cast<std::int64_t>(y.size()) != n)
        throw std::invalid_argument("operator/vector size mismatch");
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += val[k] * x[col[k]];
        y[i] = acc;
    }
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
    std::vector<double> y(x.size());
    apply(std::span<const double>(x), std::span<double>(y));
    return y;
}

double SparseOperator::entry(std::int64_t i, std::int64_t j) const {
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == j) return val[k];
    return 0.0;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    for (double v : val) m = std::max(m, std::fabs(v));
    return m;
}

std::int64_t SparseOperator::max_row_nnz() const {
    std::int64_t m = 0;
    for (std::int64_t i = 0; i < n; ++i) m = std::max(m, row_ptr[i + 1] - row_ptr[i]);
    return m;
}

double SparseOperator::weighted_symmetry_defect() const {
    double scale = 0.0, defect = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            std::int64_t j = col[k];
            double wa = weight[i] * val[k];
            scale = std::max(scale, std::fabs(wa));
            double wat = weight[j] * entry(j, i);
            defect = std::max(defect, std::fabs(wa - wat));
        }
    }
    return scale > 0 ? defect / scale : 0.0;
}

void SparseOperator::export_triplets(std::ostream& os) const {
    os.precision(17);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            os << i << ' ' << col[k] << ' ' << val[k] << '\n';
}

double relative_difference(const SparseOperator& a, const SparseOperator& b) {
    if (a.n != b.n) throw std::invalid_argument("operator size mismatch");
    double scale = std::max(a.max_abs(), b.max_abs());
    if (scale == 0.0) return 0.0;
    double diff = 0.0;
    for (std::int64_t i = 0; i < a.n; ++i) {
        std::int64_t ka = a.row_ptr[i], kb = b.row_ptr[i];
        while (ka < a.row_ptr[i + 1] || kb < b.row_ptr[i + 1]) {
            std::int64_t ja = ka < a.row_ptr[i + 1] ? a.col[ka] : a.n;
            std::int64_t jb = kb < b.row_ptr[i + 1] ? b.col[kb] : b.n;
            if (ja == jb) {
                diff = std::max(diff, std::fabs(a.val[ka] - b.val[kb]));
                ++ka, ++kb;
            } else if (ja < jb) {
                diff = std::max(diff, std::fabs(a.val[ka]));
                ++ka;
            } else {
                diff = std::max(diff, std::fabs(b.val[kb]));
                ++kb;
            }
        }
    }
    return diff / scale;
}

SparseOperator TripletAccumulator::build(std::vector<double> weight, AssemblyForm form,
                                         GridPtr grid) const {
    std::vector<T> t = trips_;
    std::sort(t.begin(), t.end(), [](const T& x, const T& y) {
        return x.i != y.i ? x.i < y.i : x.j < y.j;
    });

    SparseOperator op;
    op.n = n_;
    op.weight = std::move(weight);
    op.form = form;
    op.grid = std::move(grid);
    op.row_ptr.assign(static_cast<size_t>(n_) + 1, 0);

    size_t k = 0;
    while (k < t.size()) {
        size_t e = k + 1;
        double acc = t[k].v;
        while (e < t.size() && t[e].i == t[k].i && t[e].j == t[k].j) acc += t[e++].v;
        op.col.push_back(static_cast<std::int32_t>(t[k].j));
        op.val.push_back(acc);
        op.row_ptr[static_cast<size_t>(t[k].i) + 1]++;
        k = e;
    }
    for (std::int64_t i = 0; i < n_; ++i) op.row_ptr[i + 1] += op.row_ptr[i];
    return op;
}

}  // namespace cauchy
