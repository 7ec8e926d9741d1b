#include "cauchy/hypotheses.hpp"

#include <cmath>
#include <stdexcept>

#include "cauchy/operators.hpp"
#include "cauchy/spectral.hpp"
#include "cauchy/util.hpp"

namespace cauchy {

const char* to_string(L2locVerdict v) {
    switch (v) {
        case L2locVerdict::integrable: return "integrable";
        case L2locVerdict::non_integrable: return "non-integrable";
        default: return "inconclusive";
    }
}

PotentialClassification classify_l2loc(const ScalarField& potential, const ScalarField& lapse,
                                       const MetricField& h) {
    const Grid& g = *h.grid;
    PotentialClassification out;
    size_t n = potential.values.size();
    out.scaled.resize(n);
    out.v_plus.resize(n);
    out.v_minus.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double s = lapse.values[i] * lapse.values[i] * potential.values[i];
        out.scaled[i] = s;
        out.v_plus[i] = s > 0 ? s : 0.0;
        out.v_minus[i] = s < 0 ? s : 0.0;
    }

    if (potential.markers.empty()) {
        out.verdict = L2locVerdict::integrable;
        out.note = "smooth sampled potential on the grid window";
        return out;
    }
    if (!potential.closed_form || !lapse.closed_form || !h.closed_form[0]) {
        out.verdict = L2locVerdict::inconclusive;
        out.note = "singularity marked but closed forms missing";
        return out;
    }

    const int d = g.dim();
    // square of the scaled potential against the lapse-rescaled measure
    auto integrand = [&](double x) {
        double nv = eval(lapse.closed_form, x);
        double vv = eval(potential.closed_form, x);
        double s = nv * nv * vv;
        double density = std::sqrt(eval(h.closed_form[0], x)) / nv;
        return s * s * density;
    };

    bool any_non = false, any_inc = false;
    for (const SingularMarker& m : potential.markers) {
        SingularityReport rep;
        rep.x0 = m.x0;
        rep.p = m.p;
        rep.analytic_integrable = 2.0 * m.p < static_cast<double>(d);

        if (d != 1) {
            rep.numeric = TailVerdict::inconclusive;
            rep.verdict = rep.analytic_integrable ? L2locVerdict::integrable
                                                  : L2locVerdict::non_integrable;
        } else {
            double room = std::min(m.x0 - g.axis(0).lo, g.axis(0).hi - m.x0);
            double eps0 = std::min(0.25, std::max(room, 1e-3) / 2.0);
            std::vector<double> increments;
            for (int k = 0; k < 14; ++k) {
                double hi = eps0 * std::pow(2.0, -k);
                double lo = 0.5 * hi;
                double j = integrate(integrand, m.x0 + lo, m.x0 + hi, 32) +
                           integrate(integrand, m.x0 - hi, m.x0 - lo, 32);
                increments.push_back(j);
                if (j > 1e100) break;
            }
            rep.numeric = classify_increments(increments);
            bool numeric_integrable = rep.numeric == TailVerdict::convergent;
            if (rep.numeric == TailVerdict::inconclusive)
                rep.verdict = L2locVerdict::inconclusive;
            else if (numeric_integrable == rep.analytic_integrable)
                rep.verdict = numeric_integrable ? L2locVerdict::integrable
                                                 : L2locVerdict::non_integrable;
            else
                rep.verdict = L2locVerdict::inconclusive;  // routes disagree
        }
        any_non |= rep.verdict == L2locVerdict::non_integrable;
        any_inc |= rep.verdict == L2locVerdict::inconclusive;
        out.singularities.push_back(rep);
    }
    out.verdict = any_non ? L2locVerdict::non_integrable
                          : (any_inc ? L2locVerdict::inconclusive : L2locVerdict::integrable);
    return out;
}

SemiboundedReport semibounded_constant(const SparseOperator& w2, const ScalarField& potential,
                                       const ScalarField& lapse, const ExprPtr& potential_expr,
                                       const ExprPtr& lapse_expr) {
    const Grid& g = *w2.grid;
    SemiboundedReport rep;

    double window_min = std::numeric_limits<double>::infinity();
    double window_max = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < potential.values.size(); ++i) {
        double s = lapse.values[i] * lapse.values[i] * potential.values[i];
        window_min = std::min(window_min, s);
        window_max = std::max(window_max, s);
    }
    rep.c_diagonal = window_min;
    rep.c = window_min;
    rep.method = "diagonal-bound";

    try {
        auto s = smallest_eigenpairs(w2, 1);
        rep.c_eigen = s.eigenvalues[0];
        if (*rep.c_eigen > rep.c) {
            rep.c = *rep.c_eigen;
            rep.method = "eigensolve";
        }
    } catch (const std::exception& e) {
        rep.note = std::string("eigensolve unavailable: ") + e.what();
    }

    if (g.compact()) {
        rep.trend = "compact";
        rep.verified = true;
        return rep;
    }
    if (!potential_expr || !lapse_expr) {
        rep.trend = "unknown";
        rep.verified = false;
        rep.note = "no closed form to sample beyond the window";
        return rep;
    }

    // sample the scaled potential on a widened box
    double ext_min = std::numeric_limits<double>::infinity();
    const int probes = 512;
    auto scaled_at = [&](double x, double y) {
        double nv = eval(lapse_expr, x, y);
        return nv * nv * eval(potential_expr, x, y);
    };
    if (g.dim() == 1) {
        const Axis& ax = g.axis(0);
        double span = ax.hi - ax.lo;
        for (int k = 0; k <= probes; ++k) {
            double off = 3.0 * span * k / probes;
            ext_min = std::min(ext_min, scaled_at(ax.hi + off, 0.0));
            ext_min = std::min(ext_min, scaled_at(ax.lo - off, 0.0));
        }
    } else {
        const Axis& ax = g.axis(0);
        const Axis& ay = g.axis(1);
        int side = 48;
        double sx = ax.hi - ax.lo, sy = ay.hi - ay.lo;
        for (int i = 0; i <= side; ++i)
            for (int j = 0; j <= side; ++j) {
                double x = ax.lo - 1.5 * sx + (4.0 * sx) * i / side;
                double y = ay.lo - 1.5 * sy + (4.0 * sy) * j / side;
                ext_min = std::min(ext_min, scaled_at(x, y));
            }
    }

    double span = std::max(1.0, window_max - window_min);
    if (ext_min < window_min - 10.0 * span) {
        rep.trend = "strongly-decreasing";
        rep.verified = false;
        rep.note = "scaled potential collapses beyond the window (min " + std::to_string(ext_min) +
                   "); the window bound does not extend";
    } else if (ext_min < window_min - 0.01 * span) {
        rep.trend = "decreasing";
        rep.verified = false;
        rep.note = "scaled potential keeps decreasing beyond the window";
    } else {
        rep.trend = "no-decrease";
        rep.verified = true;
    }
    return rep;
}

CertificateReport esa_certificate(const CertificateInputs& in) {
    CertificateReport rep;
    rep.slice_time = in.slice.time;

    CompletenessInputs ci;
    ci.grid = in.grid;
    ci.asserted_globally_hyperbolic = in.asserted_globally_hyperbolic;
    ci.time_independent = in.time_independent;
    ci.slice_time = in.slice.time;
    ci.lapse = in.lapse_expr;
    ci.metric = in.metric_expr;
    ci.foliation = in.foliation;
    rep.completeness = completeness_verdict(ci);

    rep.potential = classify_l2loc(in.slice.potential, in.slice.lapse, in.slice.metric);

    SparseOperator w2 = assemble_spatial_kg(in.slice.lapse, in.slice.metric, in.slice.potential);
    rep.semibounded = semibounded_constant(w2, in.slice.potential, in.slice.lapse,
                                           in.potential_expr, in.lapse_expr);
    rep.lambda_min = rep.semibounded.c_eigen.value_or(rep.semibounded.c_diagonal);

    rep.positivity_eps = in.slice.potential.min();
    rep.strictly_positive = rep.positivity_eps > 0.0;

    // aggregation is monotone: any failure wins, else any open question
    if (rep.completeness.overall == EndVerdict::incomplete)
        rep.overall = "hypothesis-failed(completeness)";
    else if (rep.potential.verdict == L2locVerdict::non_integrable)
        rep.overall = "hypothesis-failed(potential-integrability)";
    else if (!rep.semibounded.verified && rep.semibounded.trend == "strongly-decreasing")
        rep.overall = "hypothesis-failed(semi-boundedness)";
    else if (rep.completeness.overall == EndVerdict::inconclusive ||
             rep.potential.verdict == L2locVerdict::inconclusive || !rep.semibounded.verified)
        rep.overall = "inconclusive";
    else
        rep.overall = "hypotheses-verified";
    return rep;
}

}  // namespace cauchy
