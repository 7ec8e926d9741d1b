#include <doctest.h>

#include <cmath>

#include "cauchy/conformal.hpp"
#include "helpers.hpp"

using namespace cauchy;
using namespace cauchy::testing;

TEST_SUITE("conformal") {

TEST_CASE("transform basics") {
    auto g = truncated_line(16, 0, 1);
    auto wm = WeightedManifold::from_weight(MetricField::identity(g),
                                            ScalarField::constant(g, 1.0));

    SUBCASE("identity pair") {
        ConformalPair cp{ScalarField::constant(g, 1.0), ScalarField::constant(g, 1.0)};
        auto out = conformal_transform(wm, cp);
        for (std::int64_t i = 0; i < g->size(); ++i) {
            CHECK(out.metric.c00[i] == 1.0);
            CHECK(out.weight.values[i] == 1.0);
        }
    }

    SUBCASE("constant factors scale metric and measure independently") {
        ConformalPair cp{ScalarField::constant(g, 4.0), ScalarField::constant(g, 1.0)};
        auto out = conformal_transform(wm, cp);
        for (std::int64_t i = 0; i < g->size(); ++i) {
            CHECK(out.metric.c00[i] == 4.0);
            CHECK(out.weight.values[i] == 1.0);
        }
    }

    SUBCASE("rejects sign-changing factors") {
        std::vector<double> bad(16, 1.0);
        bad[7] = -0.5;
        ConformalPair cp{ScalarField::from_values(g, bad), ScalarField::constant(g, 1.0)};
        CHECK_THROWS_AS(conformal_transform(wm, cp), std::runtime_error);
    }
}

TEST_CASE("lapse rescaling is the a = b = N^-2 special case") {
    auto g = truncated_line(24, 0, 1);
    Rng rng(9);
    auto N = random_positive_field(g, rng);
    auto h = MetricField::isotropic(g, random_positive_field(g, rng));
    auto wm = WeightedManifold::from_density(N, h);

    std::vector<double> ninv2(N.values.size());
    for (size_t i = 0; i < ninv2.size(); ++i) ninv2[i] = 1.0 / (N.values[i] * N.values[i]);
    auto f = ScalarField::from_values(g, ninv2);
    auto via_pair = conformal_transform(wm, ConformalPair{f, f});
    auto direct = optical_manifold(N, h);
    for (std::int64_t i = 0; i < g->size(); ++i) {
        CHECK(via_pair.metric.c00[i] == doctest::Approx(direct.metric.c00[i]).epsilon(1e-14));
        CHECK(via_pair.weight.values[i] ==
              doctest::Approx(direct.weight.values[i]).epsilon(1e-14));
    }
}

TEST_CASE("transforms compose multiplicatively") {
    auto g = truncated_square(8, 8, 0, 1);
    Rng rng(13);
    auto wm = WeightedManifold::from_density(random_positive_field(g, rng),
                                             MetricField::identity(g));
    auto a1 = random_positive_field(g, rng), b1 = random_positive_field(g, rng);
    auto a2 = random_positive_field(g, rng), b2 = random_positive_field(g, rng);

    auto two_step = conformal_transform(conformal_transform(wm, {a1, b1}), {a2, b2});
    std::vector<double> aa(a1.values.size()), bb(b1.values.size());
    for (size_t i = 0; i < aa.size(); ++i) {
        aa[i] = a1.values[i] * a2.values[i];
        bb[i] = b1.values[i] * b2.values[i];
    }
    auto one_step = conformal_transform(
        wm, {ScalarField::from_values(g, aa), ScalarField::from_values(g, bb)});
    for (std::int64_t i = 0; i < g->size(); ++i) {
        CHECK(two_step.metric.c00[i] == doctest::Approx(one_step.metric.c00[i]).epsilon(1e-14));
        CHECK(two_step.weight.values[i] ==
              doctest::Approx(one_step.weight.values[i]).epsilon(1e-14));
    }
}

TEST_CASE("divergence-form assembly matches the transformed manifold") {
    Rng rng(21);
    for (int dim = 1; dim <= 2; ++dim) {
        auto g = dim == 1 ? truncated_line(48, -1, 1) : truncated_square(10, 12, -1, 1);
        MetricField h = MetricField::identity(g);
        if (dim == 2) {
            auto f = random_positive_field(g, rng);
            for (std::int64_t i = 0; i < g->size(); ++i) {
                h.c00[i] = f.values[i];
                h.c01[i] = 0.15 * std::cos(f.values[i]);
            }
        }
        auto wm = WeightedManifold::from_density(random_positive_field(g, rng), h);
        for (int rep = 0; rep < 3; ++rep) {
            ConformalPair cp{random_positive_field(g, rng), random_positive_field(g, rng)};
            auto direct = divergence_form_laplacian(wm, cp);
            auto assembled = assemble_weighted_laplacian(conformal_transform(wm, cp));
            CHECK(relative_difference(direct, assembled) <= 1e-13);
        }
    }
}

TEST_CASE("equal factors reduce to a pointwise rescale of the Laplacian") {
    auto g = truncated_line(48, -1, 1);
    Rng rng(29);
    auto wm = WeightedManifold::from_density(random_positive_field(g, rng),
                                             MetricField::identity(g));
    auto a = random_positive_field(g, rng);
    auto direct = divergence_form_laplacian(wm, ConformalPair{a, a});

    auto lap = assemble_weighted_laplacian(wm);
    for (std::int64_t i = 0; i < lap.n; ++i)
        for (std::int64_t k = lap.row_ptr[i]; k < lap.row_ptr[i + 1]; ++k)
            lap.val[k] /= a.values[i];
    CHECK(relative_difference(direct, lap) <= 1e-13);

    SUBCASE("trivial pair returns the Laplacian itself") {
        auto same = divergence_form_laplacian(
            wm, ConformalPair{ScalarField::constant(g, 1.0), ScalarField::constant(g, 1.0)});
        auto plain = assemble_weighted_laplacian(wm);
        CHECK(relative_difference(same, plain) == 0.0);
    }
}

TEST_CASE("lapse rescaling identity residual") {
    SUBCASE("identity lapse") {
        auto g = truncated_line(16, 0, 1);
        CHECK(lapse_rescaling_identity_residual(ScalarField::constant(g, 1.0),
                                                MetricField::identity(g)) == 0.0);
    }
    SUBCASE("cosh lapse in 1D") {
        auto g = truncated_line(64, -2, 2);
        auto N = ScalarField::from_expression(g, parse_expression("cosh(x)"), "cosh(x)");
        CHECK(lapse_rescaling_identity_residual(N, MetricField::identity(g)) <= 1e-13);
    }
    SUBCASE("polynomial lapse, diagonal 2D metric") {
        auto g = truncated_square(12, 12, -1, 1);
        auto N = ScalarField::from_expression(g, parse_expression("1 + x^2 + y^2"),
                                              "1+x^2+y^2");
        MetricField h = MetricField::identity(g);
        for (std::int64_t i = 0; i < g->size(); ++i) {
            double x, y;
            g->node(i, x, y);
            h.c00[i] = 1.5 + 0.5 * std::sin(x);
            h.c11[i] = 1.5 + 0.5 * std::cos(y);
        }
        CHECK(lapse_rescaling_identity_residual(N, h) <= 1e-13);
    }
}

}  // TEST_SUITE
