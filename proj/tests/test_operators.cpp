#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"

using namespace cauchy;
using namespace cauchy::testing;

namespace {

const double kTwoPi = 6.283185307179586;

WeightedManifold flat_circle(int n) {
    auto g = periodic_line(n);
    return WeightedManifold::from_weight(MetricField::identity(g),
                                         ScalarField::constant(g, 1.0));
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("flat periodic Laplacian reproduces the classical discrete spectrum") {
    const int n = 32;
    auto wm = flat_circle(n);
    SparseOperator lap = assemble_weighted_laplacian(wm);
    CHECK(lap.max_row_nnz() <= 3);

    // eigenvalues of -Lap, via a dense solve on the symmetrized form
    SparseOperator neg = lap;
    for (auto& v : neg.val) v = -v;
    auto ev = dense_eigenvalues(neg);

    double dx = wm.grid->axis(0).dx;
    std::vector<double> expected(n);
    for (int k = 0; k < n; ++k) {
        double s = std::sin(3.14159265358979323846 * k / n);
        expected[k] = 4.0 / (dx * dx) * s * s;
    }
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < n; ++k)
        CHECK(ev[k] == doctest::Approx(expected[k]).epsilon(1e-12).scale(1.0 / (dx * dx)));
}

TEST_CASE("constants lie in the kernel on periodic grids") {
    Rng rng(5);
    auto g = periodic_line(48);
    auto wm = WeightedManifold::from_weight(MetricField::identity(g),
                                            random_positive_field(g, rng));
    SparseOperator lap = assemble_weighted_laplacian(wm);
    auto out = lap.apply(std::vector<double>(48, 3.7));
    double scale = lap.max_abs() * 3.7;
    for (double v : out) CHECK(std::fabs(v) <= 1e-13 * scale);

    // with a flat density the cancellation is binary-exact
    auto flat = assemble_weighted_laplacian(flat_circle(48));
    for (double v : flat.apply(std::vector<double>(48, 3.7))) CHECK(v == 0.0);
}

TEST_CASE("exponential density: Lap converges to u'' + u' at second order") {
    // density m = e^x against h = 1 turns Lap into u'' + u'
    double errs[3];
    int level = 0;
    for (int n : {65, 129, 257}) {
        auto g = truncated_line(n, 0.0, 1.0);
        auto m = ScalarField::from_expression(g, parse_expression("exp(x)"), "exp(x)");
        auto wm = WeightedManifold::from_weight(MetricField::identity(g), m);
        SparseOperator lap = assemble_weighted_laplacian(wm);

        std::vector<double> u(n);
        for (int i = 0; i < n; ++i) u[i] = std::sin(g->axis(0).coords[i]);
        auto lu = lap.apply(u);
        double err = 0.0;
        for (int i = 1; i < n - 1; ++i) {
            double x = g->axis(0).coords[i];
            err = std::max(err, std::fabs(lu[i] - (-std::sin(x) + std::cos(x))));
        }
        errs[level++] = err;
    }
    CHECK(std::log2(errs[0] / errs[1]) > 1.9);
    CHECK(std::log2(errs[1] / errs[2]) > 1.9);
}

TEST_CASE("weighted symmetry holds to rounding, including cross terms") {
    Rng rng(17);
    auto g = truncated_square(12, 10, -1.0, 1.0);
    MetricField h = MetricField::identity(g);
    auto f1 = random_positive_field(g, rng);
    auto f2 = random_positive_field(g, rng);
    for (std::int64_t i = 0; i < g->size(); ++i) {
        h.c00[i] = f1.values[i];
        h.c11[i] = f2.values[i];
        h.c01[i] = 0.2 * std::sin(f1.values[i]);  // keeps the metric SPD
    }
    auto wm = WeightedManifold::from_density(random_positive_field(g, rng), h);
    SparseOperator lap = assemble_weighted_laplacian(wm);
    CHECK(lap.weighted_symmetry_defect() <= 1e-13);
    CHECK(lap.max_row_nnz() <= 9);

    // -Lap stays nonnegative as a quadratic form
    for (int rep = 0; rep < 5; ++rep) {
        auto u = random_compact_field(g, rng);
        auto lu = lap.apply(u.values);
        double q = weighted_inner_product(std::span<const double>(u.values),
                                          std::span<const double>(lu), wm);
        CHECK(q <= 1e-12);
    }
}

TEST_CASE("summation-by-parts identity") {
    Rng rng(23);

    SUBCASE("zero fields") {
        auto g = truncated_line(16, 0, 1);
        auto wm = WeightedManifold::from_weight(MetricField::identity(g),
                                                ScalarField::constant(g, 1.0));
        auto lap = assemble_weighted_laplacian(wm);
        auto z = ScalarField::constant(g, 0.0);
        CHECK(green_formula_residual(lap, z, z, wm) == 0.0);
    }

    SUBCASE("random compact pairs, 1D and 2D") {
        for (int dim = 1; dim <= 2; ++dim) {
            auto g = dim == 1 ? truncated_line(64, -1, 1) : truncated_square(16, 16, -1, 1);
            auto wm = WeightedManifold::from_density(random_positive_field(g, rng),
                                                     MetricField::identity(g));
            auto lap = assemble_weighted_laplacian(wm);
            for (int rep = 0; rep < 20; ++rep) {
                auto u = random_compact_field(g, rng);
                auto v = random_compact_field(g, rng);
                double lv = weighted_inner_product(
                    std::span<const double>(u.values),
                    std::span<const double>(lap.apply(v.values)), wm);
                double res = green_formula_residual(lap, u, v, wm);
                CHECK(res <= 1e-12 * (2 * std::fabs(lv) + 1.0));
            }
        }
    }

    SUBCASE("diagonal form is nonpositive") {
        auto g = periodic_line(32);
        auto wm = flat_circle(32);
        auto lap = assemble_weighted_laplacian(wm);
        auto u = random_compact_field(g, rng);
        double rhs = -diffusion_energy(g, diffusion_coefficients(wm),
                                       std::span<const double>(u.values),
                                       std::span<const double>(u.values));
        CHECK(rhs <= 0.0);
    }
}

TEST_CASE("spatial wave operator") {
    const double m0sq = 1.0;
    auto g = periodic_line(32);
    auto one = ScalarField::constant(g, 1.0);
    auto h = MetricField::identity(g);

    SUBCASE("constant mode sits exactly at the potential floor") {
        auto w2 = assemble_spatial_kg(one, h, ScalarField::constant(g, m0sq));
        auto out = w2.apply(std::vector<double>(32, 1.0));
        for (double v : out) CHECK(v == doctest::Approx(m0sq).epsilon(1e-13));
        CHECK(w2.weighted_symmetry_defect() <= 1e-13);
    }

    SUBCASE("constant lapse rescales the flat Laplacian") {
        auto w2 = assemble_spatial_kg(ScalarField::constant(g, 2.0), h,
                                      ScalarField::constant(g, 0.0));
        SparseOperator lap = assemble_weighted_laplacian(
            WeightedManifold::from_density(one, h));
        for (auto& v : lap.val) v *= -4.0;
        CHECK(relative_difference(w2, lap) <= 1e-13);
    }

    SUBCASE("potential floor bounds the quadratic form") {
        Rng rng(31);
        auto N = random_positive_field(g, rng);
        auto V = random_positive_field(g, rng, 2.0, 0.5);
        auto w2 = assemble_spatial_kg(N, h, V);
        auto opt = optical_manifold(N, h);
        double floor = 1e300;
        for (std::int64_t i = 0; i < g->size(); ++i)
            floor = std::min(floor, N.values[i] * N.values[i] * V.values[i]);
        for (int rep = 0; rep < 5; ++rep) {
            auto u = random_compact_field(g, rng);
            double uu = weighted_inner_product(u, u, opt);
            double uw = weighted_inner_product(std::span<const double>(u.values),
                                               std::span<const double>(w2.apply(u.values)), opt);
            CHECK(uw >= floor * uu - 1e-10 * std::fabs(uw));
        }
    }

    SUBCASE("splits as lapse-squared times the N-weighted Laplacian plus potential") {
        Rng rng(41);
        auto N = random_positive_field(g, rng);
        auto V = random_positive_field(g, rng);
        auto w2 = assemble_spatial_kg(N, h, V);

        SparseOperator lap = assemble_weighted_laplacian(WeightedManifold::from_density(N, h));
        TripletAccumulator acc(lap.n);
        for (std::int64_t i = 0; i < lap.n; ++i) {
            double n2 = N.values[i] * N.values[i];
            for (std::int64_t k = lap.row_ptr[i]; k < lap.row_ptr[i + 1]; ++k)
                acc.add(i, lap.col[k], -n2 * lap.val[k]);
            acc.add(i, i, n2 * V.values[i]);
        }
        auto alt = acc.build(w2.weight, AssemblyForm::divergence, g);
        CHECK(relative_difference(w2, alt) <= 1e-13);
    }
}

TEST_CASE("expanded form agrees with the divergence form") {
    SUBCASE("exactly for constant lapse") {
        auto g = truncated_line(32, -1, 1);
        auto N = ScalarField::constant(g, 3.0);
        auto h = MetricField::identity(g);
        auto V = ScalarField::constant(g, 0.7);
        auto a = assemble_spatial_kg(N, h, V);
        auto b = assemble_spatial_kg_expanded(N, h, V);
        CHECK(relative_difference(a, b) <= 1e-13);
    }

    SUBCASE("at second order for varying lapse") {
        double errs[3];
        int level = 0;
        for (int n : {65, 129, 257}) {
            auto g = truncated_line(n, -1.0, 1.0);
            auto N = ScalarField::from_expression(g, parse_expression("1 + x^2"), "1+x^2");
            auto h = MetricField::identity(g);
            auto V = ScalarField::constant(g, 0.0);
            auto a = assemble_spatial_kg(N, h, V);
            auto b = assemble_spatial_kg_expanded(N, h, V);

            std::vector<double> u(n);
            for (int i = 0; i < n; ++i) {
                double x = g->axis(0).coords[i];
                double s = 1 - x * x;
                u[i] = s * s * s * s;
            }
            auto du = a.apply(u);
            auto eu = b.apply(u);
            double err = 0.0;
            for (int i = 0; i < n; ++i) err = std::max(err, std::fabs(du[i] - eu[i]));
            errs[level++] = err;
        }
        CHECK(std::log2(errs[0] / errs[1]) > 1.9);
        CHECK(std::log2(errs[1] / errs[2]) > 1.9);
    }
}

TEST_CASE("triplet export") {
    auto wm = flat_circle(8);
    auto lap = assemble_weighted_laplacian(wm);
    std::ostringstream os;
    lap.export_triplets(os);
    std::istringstream is(os.str());
    std::int64_t i, j;
    double v;
    int count = 0;
    double diag = 0;
    while (is >> i >> j >> v) {
        ++count;
        if (i == 0 && j == 0) diag = v;
    }
    CHECK(count == 24);
    double dx = wm.grid->axis(0).dx;
    CHECK(diag == doctest::Approx(-2.0 / (dx * dx)));
}

}  // TEST_SUITE
