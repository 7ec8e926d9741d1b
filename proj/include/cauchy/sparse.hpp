#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cauchy/grid.hpp"

namespace cauchy {

enum class AssemblyForm { divergence, expanded };

// CSR operator together with the diagonal weights W of the inner product it
// is meant to be symmetric in (W_i = measure density * cell volume).
// Divergence-form assemblies satisfy W A = A^T W up to rounding; expanded
// assemblies carry the same weights but are only asymptotically symmetric.
struct SparseOperator {
    std::int64_t n = 0;
    std::vector<std::int64_t> row_ptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;
    std::vector<double> weight;
    AssemblyForm form = AssemblyForm::divergence;
    GridPtr grid;

    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    double entry(std::int64_t i, std::int64_t j) const;  // 0 when absent
    double max_abs() const;
    std::int64_t max_row_nnz() const;

    // max |W_i A_ij - W_j A_ji| / max |W_i A_ij|
    double weighted_symmetry_defect() const;

    // "row col value" triplets, one per line.
    void export_triplets(std::ostream& os) const;
};

// max entry-wise |A - B| normalized by the largest magnitude present in
// either operator. Patterns need not match; missing entries count as zero.
double relative_difference(const SparseOperator& a, const SparseOperator& b);

// Helper used by assemblies: accumulates (i, j, v) triplets, then builds CSR.
class TripletAccumulator {
public:
    explicit TripletAccumulator(std::int64_t n) : n_(n) {}
    void add(std::int64_t i, std::int64_t j, double v) { trips_.push_back({i, j, v}); }
    SparseOperator build(std::vector<double> weight, AssemblyForm form, GridPtr grid) const;

private:
    struct T {
        std::int64_t i, j;
        double v;
    };
    std::int64_t n_;
    std::vector<T> trips_;
};

}  // namespace cauchy
