#include "cauchy/weyl.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace cauchy {

namespace {

using cplx = std::complex<double>;

struct Coeffs {
    double p, w, q;
};

// Sturm-Liouville data of the spatial wave operator in 1D: weight w is the
// rescaled measure density, p the flux coefficient, q the scaled potential.
struct CoeffEval {
    const ExprPtr &lapse, &h11, &pot;
    Coeffs operator()(double x) const {
        double n = eval(lapse, x);
        double rh = std::sqrt(eval(h11, x));
        return {n / rh, rh / n, n * n * eval(pot, x)};
    }
};

struct PairState {
    cplx u1{1.0, 0.0}, v1{0.0, 0.0};
    cplx u2{0.0, 0.0}, v2{1.0, 0.0};
    double i1 = 0.0, i2 = 0.0;  // windowed norms in the current scale
    double logscale = 0.0;
};

struct Deriv {
    cplx du1, dv1, du2, dv2;
    double di1, di2;
};

Deriv rhs(const PairState& s, const Coeffs& c) {
    const cplx lambda{0.0, 1.0};
    Deriv d;
    d.du1 = s.v1 / c.p;
    d.dv1 = c.w * (c.q - lambda) * s.u1;
    d.du2 = s.v2 / c.p;
    d.dv2 = c.w * (c.q - lambda) * s.u2;
    d.di1 = std::norm(s.u1) * c.w;
    d.di2 = std::norm(s.u2) * c.w;
    return d;
}

PairState advance(const PairState& s, const Deriv& d, double h) {
    PairState out = s;
    out.u1 += h * d.du1;
    out.v1 += h * d.dv1;
    out.u2 += h * d.du2;
    out.v2 += h * d.dv2;
    out.i1 += h * d.di1;
    out.i2 += h * d.di2;
    return out;
}

std::string classify_fate(const std::vector<double>& logj) {
    if (logj.size() < 3) return "inconclusive";
    const double conv = std::log(0.9), div = -std::log(0.9);
    size_t first = logj.size() > 5 ? logj.size() - 6 : 0;
    double dmax = -1e300, dmin = 1e300;
    for (size_t k = first; k + 1 < logj.size(); ++k) {
        double diff = logj[k + 1] - logj[k];
        if (!std::isfinite(logj[k]) || !std::isfinite(logj[k + 1])) return "inconclusive";
        dmax = std::max(dmax, diff);
        dmin = std::min(dmin, diff);
    }
    if (dmax <= conv) return "square-integrable";
    if (dmin >= div) return "divergent";
    return "inconclusive";
}

WeylEndReport probe_end(const CoeffEval& coeff, double anchor, double target, bool high_side,
                        const WeylOptions& opt) {
    WeylEndReport rep;
    rep.high_side = high_side;
    rep.target = target;
    const double dir = high_side ? 1.0 : -1.0;

    std::vector<double> boundaries;
    if (std::isinf(target)) {
        for (int k = 0; k <= opt.windows; ++k)
            boundaries.push_back(anchor +
                                 dir * opt.r0 * std::pow(opt.rmax / opt.r0,
                                                         double(k) / opt.windows));
    } else {
        const double d0 = std::fabs(target - anchor) / 2.0;
        const double dmin = d0 * std::pow(2.0, -12);
        for (int k = 0; k <= opt.windows; ++k)
            boundaries.push_back(target -
                                 dir * d0 * std::pow(dmin / d0, double(k) / opt.windows));
    }

    PairState s;
    double x = anchor;
    std::array<std::vector<double>, 2> logj;

    auto wronskian_check = [&](PairState& st) {
        // true Wronskian u1 v2 - u2 v1 is conserved and starts at 1; compare
        // in the current scale, relative to the size of the products
        cplx m = st.u1 * st.v2 - st.u2 * st.v1;
        double targetw = std::exp(-2.0 * st.logscale);
        double denom = std::max({std::abs(st.u1 * st.v2), std::abs(st.u2 * st.v1), targetw});
        rep.wronskian_drift = std::max(rep.wronskian_drift, std::abs(m - targetw) / denom);
    };

    for (size_t b = 0; b < boundaries.size(); ++b) {
        double stop = boundaries[b];
        s.i1 = s.i2 = 0.0;
        while (dir * (stop - x) > 1e-14 * std::max(1.0, std::fabs(stop))) {
            Coeffs c0 = coeff(x);
            double omega = std::sqrt((std::fabs(c0.q) + 1.0) * c0.w / c0.p);
            double h = opt.phase_step / std::max(omega, 1e-6);
            h = std::min(h, std::fabs(stop - x));
            // classic RK4 with stage coefficients at x, x+h/2, x+h
            Coeffs cm = coeff(x + dir * 0.5 * h);
            Coeffs c1 = coeff(x + dir * h);
            double hd = dir * h;
            Deriv k1 = rhs(s, c0);
            Deriv k2 = rhs(advance(s, k1, 0.5 * hd), cm);
            Deriv k3 = rhs(advance(s, k2, 0.5 * hd), cm);
            Deriv k4 = rhs(advance(s, k3, hd), c1);
            PairState next = s;
            auto mix = [&](auto f) { return hd / 6.0 * (f(k1) + 2.0 * f(k2) + 2.0 * f(k3) + f(k4)); };
            next.u1 += mix([](const Deriv& d) { return d.du1; });
            next.v1 += mix([](const Deriv& d) { return d.dv1; });
            next.u2 += mix([](const Deriv& d) { return d.du2; });
            next.v2 += mix([](const Deriv& d) { return d.dv2; });
            next.i1 += hd / 6.0 * (k1.di1 + 2 * k2.di1 + 2 * k3.di1 + k4.di1) * dir;
            next.i2 += hd / 6.0 * (k1.di2 + 2 * k2.di2 + 2 * k3.di2 + k4.di2) * dir;
            s = next;
            x += hd;

            double mag = std::max({std::abs(s.u1), std::abs(s.v1), std::abs(s.u2), std::abs(s.v2)});
            if (mag > 1e100) {
                s.u1 /= mag;
                s.v1 /= mag;
                s.u2 /= mag;
                s.v2 /= mag;
                s.i1 /= mag * mag;
                s.i2 /= mag * mag;
                s.logscale += std::log(mag);
            }
            if (!std::isfinite(s.u1.real()) || !std::isfinite(s.u2.real())) break;
        }
        if (b > 0) {  // the stretch from the anchor to the first boundary is warm-up
            logj[0].push_back(s.i1 > 0 ? std::log(s.i1) + 2 * s.logscale : -1e300);
            logj[1].push_back(s.i2 > 0 ? std::log(s.i2) + 2 * s.logscale : -1e300);
        }
        wronskian_check(s);
    }

    for (int j = 0; j < 2; ++j) {
        rep.solutions[j].log_increments = logj[j];
        rep.solutions[j].fate = classify_fate(logj[j]);
    }
    bool any_div = rep.solutions[0].fate == "divergent" || rep.solutions[1].fate == "divergent";
    bool both_l2 = rep.solutions[0].fate == "square-integrable" &&
                   rep.solutions[1].fate == "square-integrable";
    rep.cls = any_div ? WeylClass::limit_point
                      : (both_l2 ? WeylClass::limit_circle : WeylClass::inconclusive);
    return rep;
}

}  // namespace

const char* to_string(WeylClass c) {
    switch (c) {
        case WeylClass::limit_point: return "limit-point";
        case WeylClass::limit_circle: return "limit-circle";
        default: return "inconclusive";
    }
}

const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::yes: return "true";
        case Ternary::no: return "false";
        default: return "inconclusive";
    }
}

WeylVerdict weyl_classify(const ExprPtr& lapse, const ExprPtr& h11, const ExprPtr& potential,
                          const GridPtr& grid, const WeylOptions& opt) {
    if (grid->dim() != 1) throw std::invalid_argument("the endpoint probe is 1D only");
    if (!lapse || !h11 || !potential)
        throw std::invalid_argument("the endpoint probe needs closed-form coefficients");

    WeylVerdict out;
    const Axis& ax = grid->axis(0);
    if (ax.periodic || (ax.lo_kind != EndKind::open_end && ax.hi_kind != EndKind::open_end)) {
        out.esa = Ternary::unknown;
        out.note = "no open ends to probe";
        return out;
    }

    CoeffEval coeff{lapse, h11, potential};
    double anchor = opt.anchor;
    if (anchor <= ax.lo || anchor >= ax.hi) anchor = 0.5 * (ax.lo + ax.hi);

    WeylOptions o = opt;
    if (std::isinf(ax.hi_target)) o.rmax = std::max(o.rmax, ax.hi - anchor);
    if (ax.hi_kind == EndKind::open_end)
        out.ends.push_back(probe_end(coeff, anchor, ax.hi_target, true, o));
    if (std::isinf(ax.lo_target)) o.rmax = std::max(opt.rmax, anchor - ax.lo);
    if (ax.lo_kind == EndKind::open_end)
        out.ends.push_back(probe_end(coeff, anchor, ax.lo_target, false, o));

    bool any_lc = false, any_inc = false;
    for (const auto& e : out.ends) {
        any_lc |= e.cls == WeylClass::limit_circle;
        any_inc |= e.cls == WeylClass::inconclusive;
    }
    if (ax.lo_kind != EndKind::open_end || ax.hi_kind != EndKind::open_end)
        any_inc = true;  // a wall end was not probed
    out.esa = any_lc ? Ternary::no : (any_inc ? Ternary::unknown : Ternary::yes);
    return out;
}

}  // namespace cauchy
