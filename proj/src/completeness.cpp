#include "cauchy/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cauchy/util.hpp"

namespace cauchy {

namespace {

constexpr double kLengthCap = 1e12;

bool monotone_growth_at_edge(const std::vector<double>& s, double factor = 10.0) {
    if (s.size() < 2) return false;
    double lo = *std::min_element(s.begin(), s.end());
    double hi = *std::max_element(s.begin(), s.end());
    if (!(lo > 0) || !(hi / lo > factor)) return false;
    size_t q = std::max<size_t>(2, s.size() / 4);
    for (size_t k = s.size() - q; k + 1 < s.size(); ++k)
        if (s[k + 1] < s[k] * (1.0 - 1e-12)) return false;
    return s.back() >= 0.999 * hi;  // still climbing at the window edge
}

// Pencil eigenvalue range of h(t) against h(0) at one node.
void pencil_range(const MetricField& ht, const MetricField& h0, std::int64_t i, double& lo,
                  double& hi) {
    if (ht.dim == 1) {
        lo = hi = ht.c00[i] / h0.c00[i];
        return;
    }
    double det0 = h0.c00[i] * h0.c11[i] - h0.c01[i] * h0.c01[i];
    double b00 = (h0.c11[i] * ht.c00[i] - h0.c01[i] * ht.c01[i]) / det0;
    double b11 = (h0.c00[i] * ht.c11[i] - h0.c01[i] * ht.c01[i]) / det0;
    double dett = ht.c00[i] * ht.c11[i] - ht.c01[i] * ht.c01[i];
    double tr = b00 + b11;
    double det = dett / det0;
    double disc = tr * tr - 4.0 * det;
    double root = disc > 0 ? std::sqrt(disc) : 0.0;
    lo = 0.5 * (tr - root);
    hi = 0.5 * (tr + root);
}

struct OpenEnd {
    int axis;
    bool high;
    double target;
    double from;  // opposite edge: the integral covers the represented axis
};

std::vector<OpenEnd> open_ends(const Grid& g) {
    std::vector<OpenEnd> ends;
    for (int a = 0; a < g.dim(); ++a) {
        const Axis& ax = g.axis(a);
        if (ax.periodic) continue;
        if (ax.lo_kind == EndKind::open_end) ends.push_back({a, false, ax.lo_target, ax.hi});
        if (ax.hi_kind == EndKind::open_end) ends.push_back({a, true, ax.hi_target, ax.lo});
    }
    return ends;
}

}  // namespace

const char* to_string(EndVerdict v) {
    switch (v) {
        case EndVerdict::complete: return "complete";
        case EndVerdict::incomplete: return "incomplete";
        default: return "inconclusive";
    }
}

TailVerdict classify_increments(const std::vector<double>& increments) {
    std::vector<double> j = increments;
    for (double v : j)
        if (!std::isfinite(v)) return TailVerdict::divergent;

    int zeros = 0;
    while (!j.empty() && j.back() <= 0.0) {
        j.pop_back();
        ++zeros;
    }
    if (j.empty()) return TailVerdict::inconclusive;
    if (zeros >= 2) return TailVerdict::convergent;  // tail collapsed below double range
    if (j.size() < 3) return TailVerdict::inconclusive;

    size_t first = j.size() > 6 ? j.size() - 6 : 0;
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (size_t k = first; k + 1 < j.size(); ++k) {
        double r = j[k + 1] / j[k];
        rmax = std::max(rmax, r);
        rmin = std::min(rmin, r);
    }
    if (rmax <= 0.9) return TailVerdict::convergent;
    if (rmin >= 0.95) return TailVerdict::divergent;
    return TailVerdict::inconclusive;
}

EndEvidence end_length_1d(const ExprPtr& lapse, const ExprPtr& h11, double from, double target,
                          int axis, bool high_side, double slice_time, int windows) {
    if (!lapse || !h11) throw std::invalid_argument("end classification needs closed-form fields");
    EndEvidence ev;
    ev.axis = axis;
    ev.high_side = high_side;
    ev.target = target;

    auto density = [&](double x) {
        return std::sqrt(eval(h11, x, 0.0, slice_time)) / eval(lapse, x, 0.0, slice_time);
    };

    std::vector<double> bounds;
    bounds.push_back(from);
    if (std::isinf(target)) {
        const double dir = high_side ? 1.0 : -1.0;
        const double step0 = 1.0;
        for (int k = 0; k <= windows; ++k)
            bounds.push_back(from + dir * step0 * (std::pow(2.0, k + 1) - 1.0));
    } else {
        const double dir = target > from ? 1.0 : -1.0;
        const double d0 = std::fabs(target - from) / 2.0;
        for (int k = 0; k <= windows + 2; ++k)
            bounds.push_back(target - dir * d0 * std::pow(2.0, -k));
    }

    std::vector<double> increments;
    double total = 0.0;
    for (size_t k = 0; k + 1 < bounds.size(); ++k) {
        double j = integrate(density, bounds[k], bounds[k + 1], 64);
        increments.push_back(std::fabs(j));
        total += std::fabs(j);
        ev.cutoffs.push_back(bounds[k + 1]);
        ev.lengths.push_back(total);
        if (total > kLengthCap) break;
    }

    if (total > kLengthCap) {
        ev.verdict = EndVerdict::complete;
        ev.total_length_estimate = std::numeric_limits<double>::infinity();
        ev.note = "length exceeded cap";
        return ev;
    }

    // the first chunk reaches from the anchor; classification uses the tail
    std::vector<double> tail(increments.begin() + 1, increments.end());
    switch (classify_increments(tail)) {
        case TailVerdict::convergent: {
            ev.verdict = EndVerdict::incomplete;
            double last = 0.0, ratio = 0.0;
            for (size_t k = tail.size(); k-- > 0;)
                if (tail[k] > 0) {
                    last = tail[k];
                    if (k > 0 && tail[k - 1] > 0) ratio = tail[k] / tail[k - 1];
                    break;
                }
            ev.total_length_estimate = total + (ratio < 1.0 ? last * ratio / (1.0 - ratio) : 0.0);
            break;
        }
        case TailVerdict::divergent:
            ev.verdict = EndVerdict::complete;
            ev.total_length_estimate = std::numeric_limits<double>::infinity();
            break;
        default:
            ev.verdict = EndVerdict::inconclusive;
            ev.total_length_estimate = total;
            ev.note = "increment fit ambiguous";
    }
    return ev;
}

GeodesicResult shoot_geodesic(const std::array<ExprPtr, 3>& metric, const GridPtr& grid,
                              std::array<double, 2> x0, std::array<double, 2> v0, double t_max,
                              double dt, double slice_time) {
    if (grid->dim() != 2) throw std::invalid_argument("geodesic probe is 2D");
    for (int c = 0; c < 3; ++c)
        if (!metric[c]) throw std::invalid_argument("geodesic probe needs a closed-form metric");

    std::array<std::array<ExprPtr, 2>, 3> dm;  // component derivatives wrt x, y
    for (int c = 0; c < 3; ++c)
        for (int a = 0; a < 2; ++a) dm[c][a] = differentiate(metric[c], a);

    auto comps = [&](double x, double y, double g[3]) {
        for (int c = 0; c < 3; ++c) g[c] = eval(metric[c], x, y, slice_time);
    };

    // state: x, y, vx, vy
    auto rhs = [&](const std::array<double, 4>& s, std::array<double, 4>& out) {
        double g[3], dg[3][2];
        comps(s[0], s[1], g);
        for (int c = 0; c < 3; ++c)
            for (int a = 0; a < 2; ++a) dg[c][a] = eval(dm[c][a], s[0], s[1], slice_time);
        double det = g[0] * g[1] - g[2] * g[2];
        double gi[2][2] = {{g[1] / det, -g[2] / det}, {-g[2] / det, g[0] / det}};
        // partial derivatives of g_{ij}: index map 00->0, 11->1, 01->2
        auto dpart = [&](int i, int j, int a) { return i == j ? dg[i][a] : dg[2][a]; };
        double v[2] = {s[2], s[3]};
        double acc[2] = {0, 0};
        for (int k = 0; k < 2; ++k) {
            double sum = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double gamma = 0;
                    for (int l = 0; l < 2; ++l)
                        gamma += 0.5 * gi[k][l] * (dpart(l, j, i) + dpart(l, i, j) - dpart(i, j, l));
                    sum += gamma * v[i] * v[j];
                }
            acc[k] = -sum;
        }
        out = {v[0], v[1], acc[0], acc[1]};
    };

    auto speed = [&](const std::array<double, 4>& s) {
        double g[3];
        comps(s[0], s[1], g);
        return g[0] * s[2] * s[2] + g[1] * s[3] * s[3] + 2 * g[2] * s[2] * s[3];
    };

    GeodesicResult res;
    std::array<double, 4> s{x0[0], x0[1], v0[0], v0[1]};
    double sp0 = speed(s);
    if (!(sp0 > 0)) throw std::invalid_argument("initial velocity has nonpositive metric norm");
    double inv = 1.0 / std::sqrt(sp0);
    s[2] *= inv;
    s[3] *= inv;

    double extent[2], far_lo[2], far_hi[2];
    for (int a = 0; a < 2; ++a) {
        extent[a] = grid->axis(a).hi - grid->axis(a).lo;
        far_lo[a] = grid->axis(a).lo - 19.0 * extent[a];
        far_hi[a] = grid->axis(a).hi + 19.0 * extent[a];
    }
    double min_ext = std::min(extent[0], extent[1]);

    double lambda = 0.0;
    std::int64_t steps = 0;
    const std::int64_t step_cap = 5'000'000;
    std::array<double, 4> k1, k2, k3, k4, tmp;
    while (lambda < t_max) {
        if (++steps > step_cap) {
            res.note = "step budget exhausted";
            break;
        }
        double vmag = std::hypot(s[2], s[3]);
        double h = std::min(dt, 0.02 * min_ext / std::max(vmag, 1e-300));
        h = std::min(h, t_max - lambda);
        if (h < 1e-300) {
            res.note = "step size underflow near singular metric";
            break;
        }
        rhs(s, k1);
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < 4; ++i) tmp[i] = s[i] + h * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < 4; ++i) s[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        lambda += h;

        bool bad = false;
        for (int i = 0; i < 4; ++i) bad |= !std::isfinite(s[i]);
        if (bad) {
            res.note = "numerical blowup";
            break;
        }

        bool out_of_region = false;
        for (int a = 0; a < 2; ++a) {
            const Axis& ax = grid->axis(a);
            if (ax.periodic) {
                s[a] = ax.lo + std::fmod(std::fmod(s[a] - ax.lo, extent[a]) + extent[a], extent[a]);
            } else if (s[a] < far_lo[a] || s[a] > far_hi[a]) {
                bool open = s[a] < far_lo[a] ? ax.lo_kind == EndKind::open_end
                                             : ax.hi_kind == EndKind::open_end;
                out_of_region = true;
                if (open) {
                    res.escaped = true;
                    res.escape_parameter = lambda;
                } else {
                    res.note = "left the truncated window";
                }
            }
        }
        double sp = speed(s);
        if (std::isfinite(sp)) res.speed_drift = std::max(res.speed_drift, std::fabs(sp - 1.0));
        if (out_of_region) break;
    }
    res.parameter_reached = lambda;
    res.final_position = {s[0], s[1]};
    return res;
}

BoundsReport check_foliation_bounds(const Foliation& fol, bool conformal) {
    if (fol.times.size() < 2)
        throw std::invalid_argument("bounds check needs at least 2 time samples");

    BoundsReport rep;
    rep.conformal = conformal;
    rep.time_samples = static_cast<int>(fol.times.size());

    auto effective_metric = [&](size_t k) {
        MetricField m = fol.metric[k];
        if (conformal) {
            for (std::int64_t i = 0; i < fol.grid->size(); ++i) {
                double n2 = fol.lapse[k].values[i] * fol.lapse[k].values[i];
                m.c00[i] /= n2;
                if (m.dim == 2) {
                    m.c11[i] /= n2;
                    m.c01[i] /= n2;
                }
            }
        }
        return m;
    };

    MetricField ref = effective_metric(0);
    rep.A = std::numeric_limits<double>::infinity();
    rep.D = -std::numeric_limits<double>::infinity();
    rep.alpha_lo = std::numeric_limits<double>::infinity();
    rep.alpha_hi = -std::numeric_limits<double>::infinity();

    std::vector<double> lam_hi_series, lam_lo_inv_series, lapse_hi_series, lapse_lo_inv_series;
    for (size_t k = 0; k < fol.times.size(); ++k) {
        MetricField mk = effective_metric(k);
        double lam_hi = -std::numeric_limits<double>::infinity();
        double lam_lo = std::numeric_limits<double>::infinity();
        for (std::int64_t i = 0; i < fol.grid->size(); ++i) {
            double lo, hi;
            pencil_range(mk, ref, i, lo, hi);
            lam_lo = std::min(lam_lo, lo);
            lam_hi = std::max(lam_hi, hi);
        }
        rep.A = std::min(rep.A, lam_lo);
        rep.D = std::max(rep.D, lam_hi);
        lam_hi_series.push_back(lam_hi);
        lam_lo_inv_series.push_back(1.0 / lam_lo);

        double nlo = fol.lapse[k].min(), nhi = fol.lapse[k].max();
        rep.alpha_lo = std::min(rep.alpha_lo, nlo);
        rep.alpha_hi = std::max(rep.alpha_hi, nhi);
        lapse_hi_series.push_back(nhi);
        lapse_lo_inv_series.push_back(1.0 / nlo);
    }

    rep.metric_unbounded =
        monotone_growth_at_edge(lam_hi_series) || monotone_growth_at_edge(lam_lo_inv_series);
    rep.lapse_unbounded =
        monotone_growth_at_edge(lapse_hi_series) || monotone_growth_at_edge(lapse_lo_inv_series);

    // spatial trend of the lapse toward open ends (static unboundedness)
    for (int a = 0; a < fol.grid->dim() && !rep.lapse_unbounded; ++a) {
        const Axis& ax = fol.grid->axis(a);
        if (ax.periodic) continue;
        auto layer_max = [&](int layer) {
            double m = -std::numeric_limits<double>::infinity();
            if (fol.grid->dim() == 1) return fol.lapse[0].values[layer];
            for (int j = 0; j < fol.grid->axis(1 - a).n; ++j) {
                std::int64_t idx = a == 0 ? fol.grid->index(layer, j) : fol.grid->index(j, layer);
                m = std::max(m, fol.lapse[0].values[idx]);
            }
            return m;
        };
        if (ax.hi_kind == EndKind::open_end) {
            std::vector<double> s;
            for (int i = ax.n / 2; i < ax.n; ++i) s.push_back(layer_max(i));
            if (monotone_growth_at_edge(s)) {
                rep.lapse_unbounded = true;
                rep.notes = "lapse grows monotonically toward an open end";
            }
        }
        if (ax.lo_kind == EndKind::open_end && !rep.lapse_unbounded) {
            std::vector<double> s;
            for (int i = ax.n / 2; i >= 0; --i) s.push_back(layer_max(i));
            if (monotone_growth_at_edge(s)) {
                rep.lapse_unbounded = true;
                rep.notes = "lapse grows monotonically toward an open end";
            }
        }
    }
    if (rep.metric_unbounded && rep.notes.empty())
        rep.notes = "metric pencil grows monotonically through the time window";
    return rep;
}

CompletenessVerdict completeness_verdict(const CompletenessInputs& in) {
    CompletenessVerdict out;
    const Grid& g = *in.grid;
    auto ends = open_ends(g);

    if (g.compact()) {
        out.overall = EndVerdict::complete;
        out.provenance = "compactness";
        out.note = "all axes periodic";
        return out;
    }

    // theorem route: static spacetimes, or bounded conformally rescaled pencil
    std::optional<bool> theorem_complete;
    if (in.asserted_globally_hyperbolic) {
        if (in.time_independent) {
            theorem_complete = true;
            out.note = "static globally hyperbolic scenario";
        } else if (in.foliation) {
            out.bounds = check_foliation_bounds(*in.foliation, true);
            if (!out.bounds->metric_unbounded) {
                theorem_complete = true;
                out.note = "rescaled metric pencil bounded over the sampled window";
            }
        }
    }

    // direct route in 1D when descriptors exist
    std::optional<EndVerdict> direct;
    if (g.dim() == 1 && in.lapse && in.metric[0] && !ends.empty()) {
        bool any_incomplete = false, any_inconclusive = false;
        for (const OpenEnd& e : ends) {
            out.ends.push_back(end_length_1d(in.lapse, in.metric[0], e.from, e.target, e.axis,
                                             e.high, in.slice_time));
            any_incomplete |= out.ends.back().verdict == EndVerdict::incomplete;
            any_inconclusive |= out.ends.back().verdict == EndVerdict::inconclusive;
        }
        direct = any_incomplete ? EndVerdict::incomplete
                                : (any_inconclusive ? EndVerdict::inconclusive : EndVerdict::complete);
    }

    // geodesic probe in 2D: can certify incompleteness only
    if (g.dim() == 2 && !ends.empty() && !theorem_complete && in.lapse && in.metric[0]) {
        std::array<ExprPtr, 3> rescaled;
        for (int c = 0; c < 3; ++c) {
            ExprPtr comp = in.metric[c] ? in.metric[c] : make_constant(c == 2 ? 0.0 : 1.0);
            rescaled[c] = make_binary(ExprKind::div, comp,
                                      make_binary(ExprKind::mul, in.lapse, in.lapse));
        }
        double cx = 0.5 * (g.axis(0).lo + g.axis(0).hi);
        double cy = 0.5 * (g.axis(1).lo + g.axis(1).hi);
        double ext = std::max(g.axis(0).hi - g.axis(0).lo, g.axis(1).hi - g.axis(1).lo);
        const int shots = 16;
        std::vector<GeodesicResult> results(shots);
        parallel_for(shots, [&](int k) {
            double ang = 2.0 * 3.14159265358979323846 * k / shots;
            results[k] = shoot_geodesic(rescaled, in.grid, {cx, cy},
                                        {std::cos(ang), std::sin(ang)}, 10.0 * ext, ext / 200.0,
                                        in.slice_time);
        });
        double min_escape = std::numeric_limits<double>::infinity();
        for (const auto& r : results)
            if (r.escaped) min_escape = std::min(min_escape, r.escape_parameter);
        if (std::isfinite(min_escape)) {
            out.min_escape_parameter = min_escape;
            direct = EndVerdict::incomplete;
        }
    }

    if (direct == EndVerdict::incomplete) {
        out.overall = EndVerdict::incomplete;
        out.provenance = "by-direct-check";
        if (theorem_complete)
            out.note = "direct evidence contradicts the theorem route; the global-hyperbolicity "
                       "assertion looks wrong for this scenario";
        return out;
    }
    if (theorem_complete) {
        out.overall = EndVerdict::complete;
        out.provenance = "by-theorem";
        return out;
    }
    if (direct == EndVerdict::complete) {
        out.overall = EndVerdict::complete;
        out.provenance = "by-direct-check";
        return out;
    }
    out.overall = EndVerdict::inconclusive;
    out.provenance = "inconclusive";
    if (ends.empty())
        out.note = "truncated window into a larger manifold; no theorem route available";
    return out;
}

}  // namespace cauchy
