#include "cauchy/evolution.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "cauchy/spectral.hpp"

namespace cauchy {

namespace {

struct StageOps {
    double t;
    SparseOperator w2;
    std::vector<double> friction;
    std::vector<double> lapse;
    MetricField metric;
};

// Builds and memoizes the slice operators needed at RK4 stage times.
class Stepper {
public:
    Stepper(const Foliation& fol) : fol_(fol) {
        if (fol.has_descriptors()) {
            dlapse_ = differentiate(fol.lapse_expr, 2);
            for (int c = 0; c < 3; ++c)
                if (fol.metric_expr[c]) dmetric_[c] = differentiate(fol.metric_expr[c], 2);
        } else if (fol.time_dependent()) {
            throw std::invalid_argument(
                "time-dependent evolution needs closed-form descriptors");
        }
    }

    std::shared_ptr<const StageOps> stage(double t) {
        for (const auto& s : cache_)
            if (s->t == t) return s;
        cache_.push_back(std::make_shared<StageOps>(build(t)));
        if (cache_.size() > 6) cache_.pop_front();
        return cache_.back();
    }

private:
    StageOps build(double t) const {
        SliceData s = fol_.has_descriptors() ? fol_.slice_at(t) : fol_.slice(0);
        StageOps ops{t,
                     assemble_spatial_kg(s.lapse, s.metric, s.potential),
                     friction_values(s, t),
                     s.lapse.values,
                     s.metric};
        return ops;
    }

    std::vector<double> friction_values(const SliceData& s, double t) const {
        size_t n = s.lapse.values.size();
        std::vector<double> f(n, 0.0);
        if (!fol_.has_descriptors()) return f;
        const Grid& g = *fol_.grid;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            double x, y;
            g.node(i, x, y);
            double nv = s.lapse.values[i];
            double dn = eval(dlapse_, x, y, t);
            double dlogsqrth;
            if (g.dim() == 1) {
                dlogsqrth = eval(dmetric_[0], x, y, t) / (2.0 * s.metric.c00[i]);
            } else {
                double h00 = s.metric.c00[i], h11 = s.metric.c11[i], h01 = s.metric.c01[i];
                double d00 = eval(dmetric_[0], x, y, t);
                double d11 = dmetric_[1] ? eval(dmetric_[1], x, y, t) : 0.0;
                double d01 = dmetric_[2] ? eval(dmetric_[2], x, y, t) : 0.0;
                double det = h00 * h11 - h01 * h01;
                dlogsqrth = (d00 * h11 + h00 * d11 - 2.0 * h01 * d01) / (2.0 * det);
            }
            f[i] = -dn / nv + dlogsqrth;
        }
        return f;
    }

    const Foliation& fol_;
    ExprPtr dlapse_;
    std::array<ExprPtr, 3> dmetric_{};
    std::deque<std::shared_ptr<const StageOps>> cache_;
};

struct State {
    std::vector<double> phi, chi;
};

struct Slopes {
    std::vector<double> dphi, dchi;
};

void eval_rhs(const StageOps& ops, const State& s, Slopes& out) {
    size_t n = s.phi.size();
    out.dphi = s.chi;
    out.dchi.resize(n);
    ops.w2.apply(std::span<const double>(s.phi), std::span<double>(out.dchi));
    for (size_t i = 0; i < n; ++i)
        out.dchi[i] = -ops.friction[i] * s.chi[i] - out.dchi[i];
}

State blend(const State& s, const Slopes& k, double h) {
    State out = s;
    for (size_t i = 0; i < s.phi.size(); ++i) {
        out.phi[i] += h * k.dphi[i];
        out.chi[i] += h * k.dchi[i];
    }
    return out;
}

void rk4_step(Stepper& st, State& s, double t, double dt) {
    auto o1 = st.stage(t);
    auto om = st.stage(t + 0.5 * dt);
    auto o2 = st.stage(t + dt);
    Slopes k1, k2, k3, k4;
    eval_rhs(*o1, s, k1);
    eval_rhs(*om, blend(s, k1, 0.5 * dt), k2);
    eval_rhs(*om, blend(s, k2, 0.5 * dt), k3);
    eval_rhs(*o2, blend(s, k3, dt), k4);
    for (size_t i = 0; i < s.phi.size(); ++i) {
        s.phi[i] += dt / 6.0 * (k1.dphi[i] + 2 * k2.dphi[i] + 2 * k3.dphi[i] + k4.dphi[i]);
        s.chi[i] += dt / 6.0 * (k1.dchi[i] + 2 * k2.dchi[i] + 2 * k3.dchi[i] + k4.dchi[i]);
    }
}

void check_stability(const SparseOperator& w2, double dt) {
    double lmax = largest_eigenvalue_estimate(w2);
    double bound = 0.5 / std::sqrt(std::max(lmax, 1e-30));
    if (dt > bound)
        throw std::invalid_argument("time step " + std::to_string(dt) +
                                    " exceeds the stability bound " + std::to_string(bound));
}

double quadratic_invariant(const StageOps& ops, const State& s) {
    std::vector<double> w2phi(s.phi.size());
    ops.w2.apply(std::span<const double>(s.phi), std::span<double>(w2phi));
    double e = 0.0;
    for (size_t i = 0; i < s.phi.size(); ++i)
        e += (s.chi[i] * s.chi[i] + s.phi[i] * w2phi[i]) * ops.w2.weight[i];
    return e;
}

}  // namespace

void CauchyData::validate() const {
    if (!phi.grid || !pi.grid || !(*phi.grid == *pi.grid))
        throw std::invalid_argument("Cauchy data fields live on different grids");
}

ScalarField friction_coefficient(const Foliation& fol, double t) {
    if (fol.has_descriptors()) {
        SliceData s = fol.slice_at(t);
        auto dlapse = differentiate(fol.lapse_expr, 2);
        std::array<ExprPtr, 3> dm{};
        for (int c = 0; c < 3; ++c)
            if (fol.metric_expr[c]) dm[c] = differentiate(fol.metric_expr[c], 2);
        const Grid& g = *fol.grid;
        std::vector<double> f(static_cast<size_t>(g.size()));
        for (std::int64_t i = 0; i < g.size(); ++i) {
            double x, y;
            g.node(i, x, y);
            double dlogsqrth;
            if (g.dim() == 1) {
                dlogsqrth = eval(dm[0], x, y, t) / (2.0 * s.metric.c00[i]);
            } else {
                double det = s.metric.det(i);
                double d00 = eval(dm[0], x, y, t);
                double d11 = dm[1] ? eval(dm[1], x, y, t) : 0.0;
                double d01 = dm[2] ? eval(dm[2], x, y, t) : 0.0;
                dlogsqrth = (d00 * s.metric.c11[i] + s.metric.c00[i] * d11 -
                             2.0 * s.metric.c01[i] * d01) /
                            (2.0 * det);
            }
            f[i] = -eval(dlapse, x, y, t) / s.lapse.values[i] + dlogsqrth;
        }
        return ScalarField::from_values(fol.grid, std::move(f));
    }

    // centered finite difference of log(measure density) over the samples
    if (fol.times.size() < 2 || t < fol.times.front() || t > fol.times.back())
        throw std::invalid_argument("time outside the sampled range");
    size_t k = 1;
    while (k + 1 < fol.times.size() && fol.times[k] < t) ++k;
    size_t lo = k - 1, hi = k;
    double dt = fol.times[hi] - fol.times[lo];
    const Grid& g = *fol.grid;
    std::vector<double> f(static_cast<size_t>(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i) {
        double mlo = fol.metric[lo].sqrt_det(i) / fol.lapse[lo].values[i];
        double mhi = fol.metric[hi].sqrt_det(i) / fol.lapse[hi].values[i];
        f[i] = (std::log(mhi) - std::log(mlo)) / dt;
    }
    return ScalarField::from_values(fol.grid, std::move(f));
}

Trajectory evolve_kg(const CauchyData& data, const Foliation& fol, double t0, double t1,
                     double dt, int snapshot_stride) {
    data.validate();
    if (!(*data.phi.grid == *fol.grid))
        throw std::invalid_argument("Cauchy data does not live on the foliation grid");
    if (!(dt > 0) || !(t1 > t0)) throw std::invalid_argument("bad time range or step");

    Stepper st(fol);
    auto first = st.stage(t0);
    check_stability(first->w2, dt);

    const std::int64_t steps = static_cast<std::int64_t>(std::ceil((t1 - t0) / dt - 1e-12));
    if (snapshot_stride <= 0)
        snapshot_stride = static_cast<int>(std::max<std::int64_t>(1, steps / 64));

    State s;
    s.phi = data.phi.values;
    s.chi.resize(s.phi.size());
    for (size_t i = 0; i < s.chi.size(); ++i)
        s.chi[i] = first->lapse[i] * data.pi.values[i];

    Trajectory traj;
    auto snapshot = [&](double t) {
        auto ops = st.stage(t);
        TrajectorySample sample;
        sample.t = t;
        sample.phi = s.phi;
        sample.pi.resize(s.chi.size());
        for (size_t i = 0; i < s.chi.size(); ++i) sample.pi[i] = s.chi[i] / ops->lapse[i];
        traj.samples.push_back(std::move(sample));
        traj.energy.push_back(quadratic_invariant(*ops, s));
    };

    snapshot(t0);
    double t = t0;
    for (std::int64_t k = 0; k < steps; ++k) {
        double h = std::min(dt, t1 - t);
        rk4_step(st, s, t, h);
        t += h;
        if ((k + 1) % snapshot_stride == 0 || k + 1 == steps) snapshot(t);
    }

    double e0 = traj.energy.front();
    for (double e : traj.energy)
        traj.energy_drift =
            std::max(traj.energy_drift, std::fabs(e - e0) / std::max(std::fabs(e0), 1e-300));
    return traj;
}

double symplectic_form(const CauchyData& d1, const CauchyData& d2, const MetricField& h) {
    d1.validate();
    d2.validate();
    if (!(*d1.phi.grid == *h.grid) || !(*d2.phi.grid == *h.grid))
        throw std::invalid_argument("grid mismatch in symplectic_form");
    double acc = 0.0;
    for (std::int64_t i = 0; i < h.grid->size(); ++i)
        acc += (d1.pi.values[i] * d2.phi.values[i] - d2.pi.values[i] * d1.phi.values[i]) *
               h.sqrt_det(i);
    return acc * h.grid->cell_volume();
}

DriftReport symplectic_drift(const CauchyData& d1, const CauchyData& d2, const Foliation& fol,
                             double t0, double t1, double dt) {
    Stepper st(fol);
    auto first = st.stage(t0);
    check_stability(first->w2, dt);

    const std::int64_t steps = static_cast<std::int64_t>(std::ceil((t1 - t0) / dt - 1e-12));
    const int stride = static_cast<int>(std::max<std::int64_t>(1, steps / 50));

    auto to_state = [&](const CauchyData& d) {
        State s;
        s.phi = d.phi.values;
        s.chi.resize(s.phi.size());
        for (size_t i = 0; i < s.chi.size(); ++i) s.chi[i] = first->lapse[i] * d.pi.values[i];
        return s;
    };
    State s1 = to_state(d1), s2 = to_state(d2);

    DriftReport rep;
    auto omega_now = [&](double t) {
        auto ops = st.stage(t);
        // Omega = <chi1, phi2>_W - <chi2, phi1>_W with the rescaled weights,
        // because pi sqrt(det h) = chi sqrt(det h)/N
        double acc = 0.0;
        for (size_t i = 0; i < s1.phi.size(); ++i)
            acc += (s1.chi[i] * s2.phi[i] - s2.chi[i] * s1.phi[i]) * ops->w2.weight[i];
        rep.times.push_back(t);
        rep.omegas.push_back(acc);
    };

    omega_now(t0);
    double t = t0;
    for (std::int64_t k = 0; k < steps; ++k) {
        double h = std::min(dt, t1 - t);
        rk4_step(st, s1, t, h);
        rk4_step(st, s2, t, h);
        t += h;
        if ((k + 1) % stride == 0 || k + 1 == steps) omega_now(t);
    }

    double o0 = rep.omegas.front();
    rep.relative = std::fabs(o0) > 1e-12;
    for (double o : rep.omegas) {
        double d = std::fabs(o - o0);
        rep.drift = std::max(rep.drift, rep.relative ? d / std::fabs(o0) : d);
    }
    return rep;
}

}  // namespace cauchy
