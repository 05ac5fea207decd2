#include "radreact/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radreact/diagnostics.hpp"

namespace radreact {

namespace {

// (x, u) for second-order equations, (x, u, a) for Lorentz-Dirac.
struct OdeState {
    std::array<double, 12> y{};
    std::size_t dim = 8;

    FourVector block(std::size_t k) const { return {y[4 * k], y[4 * k + 1], y[4 * k + 2], y[4 * k + 3]}; }
    void set_block(std::size_t k, const FourVector& v)
    {
        y[4 * k] = v.t;
        y[4 * k + 1] = v.x;
        y[4 * k + 2] = v.y;
        y[4 * k + 3] = v.z;
    }
};

// y + sum_i c_i k_i
OdeState combine(const OdeState& y, double h, std::initializer_list<std::pair<double, const OdeState*>> terms)
{
    OdeState out = y;
    for (std::size_t i = 0; i < y.dim; ++i) {
        double acc = 0.0;
        for (const auto& [c, k] : terms) {
            acc += c * k->y[i];
        }
        out.y[i] += h * acc;
    }
    return out;
}

class Dynamics {
public:
    Dynamics(const FieldConfig& field, EomKind eom, const ParticleParams& params)
        : field_(field), eom_(eom), params_(params)
    {
    }

    std::size_t dim() const { return eom_ == EomKind::LorentzDirac ? 12 : 8; }

    FourVector acceleration(const FourVector& x, const FourVector& u) const
    {
        const FieldTensor f = field_at(field_, x);
        switch (eom_) {
        case EomKind::LorentzOnly: return lorentz_accel(f, u, params_.q(), params_.m());
        case EomKind::MaxAccelSecondOrder: return gho_accel(x, u, f, params_);
        case EomKind::LandauLifshitz:
            return landau_lifshitz_accel(x, u, f, field_derivative_along(field_, x, u), params_);
        case EomKind::LorentzDirac: break;
        }
        throw std::logic_error("acceleration: Lorentz-Dirac carries acceleration in its state");
    }

    OdeState derivative(const OdeState& s) const
    {
        OdeState d;
        d.dim = s.dim;
        const FourVector x = s.block(0);
        const FourVector u = s.block(1);
        if (eom_ == EomKind::LorentzDirac) {
            const auto rhs = lorentz_dirac_rhs(x, u, s.block(2), field_at(field_, x), params_);
            d.set_block(0, rhs.dx);
            d.set_block(1, rhs.du);
            d.set_block(2, rhs.da);
        } else {
            d.set_block(0, u);
            d.set_block(1, acceleration(x, u));
        }
        return d;
    }

    Jet3 jet(const OdeState& s) const
    {
        Jet3 j;
        j.x = s.block(0);
        j.u = s.block(1);
        if (eom_ == EomKind::LorentzDirac) {
            j.a = s.block(2);
            j.j = derivative(s).block(2);
        } else {
            j.a = acceleration(j.x, j.u);
        }
        return j;
    }

    void renormalize(OdeState& s) const
    {
        const FourVector x = s.block(0);
        const FourVector u = s.block(1);
        if (eom_ == EomKind::MaxAccelSecondOrder) {
            s.set_block(1, self_consistent_velocity(x, u, field_, params_));
            return;
        }
        const FourVector un = renormalize_velocity(u, 0.0);
        s.set_block(1, un);
        if (eom_ == EomKind::LorentzDirac) {
            const FourVector a = s.block(2);
            s.set_block(2, a + minkowski_dot(a, un) * un);
        }
    }

private:
    const FieldConfig& field_;
    EomKind eom_;
    const ParticleParams& params_;
};

OdeState rk4_step(const Dynamics& dyn, const OdeState& y, double h)
{
    const OdeState k1 = dyn.derivative(y);
    const OdeState k2 = dyn.derivative(combine(y, h, {{0.5, &k1}}));
    const OdeState k3 = dyn.derivative(combine(y, h, {{0.5, &k2}}));
    const OdeState k4 = dyn.derivative(combine(y, h, {{1.0, &k3}}));
    return combine(y, h, {{1.0 / 6.0, &k1}, {1.0 / 3.0, &k2}, {1.0 / 3.0, &k3}, {1.0 / 6.0, &k4}});
}

struct EmbeddedResult {
    OdeState high;
    double error_norm = 0.0;
};

// Fehlberg 4(5); the fifth-order solution is propagated.
EmbeddedResult rkf45_step(const Dynamics& dyn, const OdeState& y, double h, double rel_tol, double abs_tol)
{
    const OdeState k1 = dyn.derivative(y);
    const OdeState k2 = dyn.derivative(combine(y, h, {{1.0 / 4.0, &k1}}));
    const OdeState k3 = dyn.derivative(combine(y, h, {{3.0 / 32.0, &k1}, {9.0 / 32.0, &k2}}));
    const OdeState k4 = dyn.derivative(
        combine(y, h, {{1932.0 / 2197.0, &k1}, {-7200.0 / 2197.0, &k2}, {7296.0 / 2197.0, &k3}}));
    const OdeState k5 = dyn.derivative(
        combine(y, h, {{439.0 / 216.0, &k1}, {-8.0, &k2}, {3680.0 / 513.0, &k3}, {-845.0 / 4104.0, &k4}}));
    const OdeState k6 = dyn.derivative(combine(
        y, h,
        {{-8.0 / 27.0, &k1}, {2.0, &k2}, {-3544.0 / 2565.0, &k3}, {1859.0 / 4104.0, &k4}, {-11.0 / 40.0, &k5}}));

    EmbeddedResult r;
    r.high = combine(y, h,
                     {{16.0 / 135.0, &k1},
                      {6656.0 / 12825.0, &k3},
                      {28561.0 / 56430.0, &k4},
                      {-9.0 / 50.0, &k5},
                      {2.0 / 55.0, &k6}});
    const OdeState low =
        combine(y, h, {{25.0 / 216.0, &k1}, {1408.0 / 2565.0, &k3}, {2197.0 / 4104.0, &k4}, {-1.0 / 5.0, &k5}});

    double sum = 0.0;
    for (std::size_t i = 0; i < y.dim; ++i) {
        const double scale = abs_tol + rel_tol * std::max(std::abs(y.y[i]), std::abs(r.high.y[i]));
        const double e = (r.high.y[i] - low.y[i]) / scale;
        sum += e * e;
    }
    r.error_norm = std::sqrt(sum / static_cast<double>(y.dim));
    return r;
}

// Online run-away watch: reference |a| is taken at the last sample inside the
// field support, then every later sample is compared against it.
class RunawayWatch {
public:
    RunawayWatch(double t_support_end, double factor) : t_end_(t_support_end), factor_(factor) {}

    bool exceeded(const Jet3& prev, const Jet3& cur)
    {
        if (t_end_ == std::numeric_limits<double>::infinity()) {
            return false;
        }
        if (reference_ < 0.0) {
            if (cur.x.t <= t_end_) {
                return false;
            }
            reference_ = std::max(magnitude(prev), floor);
        }
        return magnitude(cur) > factor_ * reference_;
    }

private:
    static constexpr double floor = 1e-12;
    static double magnitude(const Jet3& j) { return std::sqrt(std::max(minkowski_dot(j.a, j.a), 0.0)); }

    double t_end_;
    double factor_;
    double reference_ = -1.0;  // unset until the support ends
};

}  // namespace

std::string_view to_string(Termination::Kind kind)
{
    switch (kind) {
    case Termination::Kind::Completed: return "Completed";
    case Termination::Kind::Runaway: return "Runaway";
    case Termination::Kind::StepFailure: return "StepFailure";
    case Termination::Kind::DomainError: return "DomainError";
    }
    return "Unknown";
}

void IntegratorConfig::validate() const
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("integrator: dt must be positive");
    }
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) {
        throw std::invalid_argument("integrator: rel_tol must lie in (0, 1e-2]");
    }
    if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) {
        throw std::invalid_argument("integrator: abs_tol must lie in (0, 1e-2]");
    }
    if (max_steps == 0) {
        throw std::invalid_argument("integrator: max_steps must be positive");
    }
    if (!(runaway_factor > 1.0)) {
        throw std::invalid_argument("integrator: runaway_factor must exceed 1");
    }
}

FourVector renormalize_velocity(const FourVector& u, double eps)
{
    if (!(eps < 1.0)) {
        throw std::domain_error("renormalize_velocity: degenerate metric (eps >= 1)");
    }
    const double n = -minkowski_dot(u, u);
    if (!(n > 0.0)) {
        throw std::domain_error("renormalize_velocity: velocity is not timelike");
    }
    return u / std::sqrt((1.0 - eps) * n);
}

FourVector self_consistent_velocity(const FourVector& x, const FourVector& u, const FieldConfig& field,
                                    const ParticleParams& params)
{
    const MaxAccelContext ctx = params.context();
    const FieldTensor f = field_at(field, x);
    FourVector cur = renormalize_velocity(u, 0.0);
    if (ctx.is_special_relativistic()) {
        return cur;
    }
    for (int it = 0; it < 50; ++it) {
        const FourVector a = gho_accel(x, cur, f, params);
        const FourVector next = renormalize_velocity(cur, epsilon(std::max(minkowski_dot(a, a), 0.0), ctx));
        const double change = max_abs(next - cur);
        cur = next;
        if (change <= 1e-16 * max_abs(cur)) {
            break;
        }
    }
    return cur;
}

ParticleState make_initial_state(const FourVector& position, const Vec3& velocity3, const FieldConfig& field,
                                 EomKind eom, const ParticleParams& params, const std::optional<Vec3>& seed_accel3)
{
    const double v2 = dot(velocity3, velocity3);
    if (!(v2 < 1.0)) {
        throw std::invalid_argument("initial state: |velocity3| must be below 1");
    }
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    ParticleState s;
    s.x = position;
    s.u = gamma * FourVector(1.0, velocity3);
    if (eom == EomKind::MaxAccelSecondOrder) {
        s.u = self_consistent_velocity(s.x, s.u, field, params);
    }
    if (eom == EomKind::LorentzDirac) {
        if (seed_accel3) {
            // choose a^0 so that η(a, u) = 0
            s.a = FourVector(dot(*seed_accel3, s.u.spatial()) / s.u.t, *seed_accel3);
        } else {
            s.a = lorentz_accel(field_at(field, s.x), s.u, params.q(), params.m());
        }
    }
    return s;
}

Trajectory integrate(const ParticleState& initial, const FieldConfig& field, EomKind eom,
                     const ParticleParams& params, const IntegratorConfig& icfg, double duration)
{
    icfg.validate();
    validate(field);
    if (!(duration > 0.0)) {
        throw std::invalid_argument("integrate: duration must be positive");
    }
    if (!(minkowski_dot(initial.u, initial.u) < 0.0) || !(initial.u.t > 0.0)) {
        throw std::invalid_argument("integrate: initial velocity must be timelike and future-oriented");
    }

    const Dynamics dyn(field, eom, params);
    Trajectory traj;
    traj.eom = eom;

    OdeState y;
    y.dim = dyn.dim();
    y.set_block(0, initial.x);
    y.set_block(1, initial.u);
    if (eom == EomKind::LorentzDirac) {
        y.set_block(2, initial.a);
    }
    if (eom == EomKind::MaxAccelSecondOrder) {
        const Jet3 j0 = dyn.jet(y);
        const double g = g_dot(j0.u, j0.u, j0, params.context());
        if (std::abs(g + 1.0) > 1e-9) {
            throw std::invalid_argument("integrate: initial velocity must satisfy g(u, u) = -1");
        }
    }

    double tau = 0.0;
    try {
        traj.samples.push_back({tau, dyn.jet(y), {}});
    } catch (const std::domain_error& e) {
        traj.terminated_by = {Termination::Kind::DomainError, tau, e.what()};
        return traj;
    }

    const double dt_min = duration * 1e-12;
    const double h_cap = field_step_bound(field);
    double h = std::min(icfg.dt, h_cap);
    double prev_error = 1.0;
    RunawayWatch watch(field_support_end(field), icfg.runaway_factor);

    try {
        while (tau < duration) {
            if (traj.accepted_steps >= icfg.max_steps) {
                traj.terminated_by = {Termination::Kind::StepFailure, tau, "max_steps exhausted"};
                break;
            }
            const double remaining = duration - tau;
            double step = std::min(h, remaining);
            OdeState next;
            if (icfg.method == StepMethod::RK4Fixed) {
                next = rk4_step(dyn, y, step);
            } else {
                const EmbeddedResult r = rkf45_step(dyn, y, step, icfg.rel_tol, icfg.abs_tol);
                if (!(r.error_norm <= 1.0)) {
                    ++traj.rejected_steps;
                    const double shrink =
                        std::isfinite(r.error_norm) ? std::max(0.2, 0.9 * std::pow(r.error_norm, -0.2)) : 0.2;
                    h = step * shrink;
                    if (h < dt_min) {
                        traj.terminated_by = {Termination::Kind::StepFailure, tau,
                                              "step size fell below duration * 1e-12"};
                        break;
                    }
                    continue;
                }
                const double err = std::max(r.error_norm, 1e-10);
                const double grow = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(prev_error, 0.4 / 5.0);
                prev_error = err;
                next = r.high;
                // a clipped final step does not set the next step size
                if (step == h) {
                    h = std::min(step * std::clamp(grow, 0.2, 5.0), h_cap);
                }
            }

            if (icfg.renormalize) {
                dyn.renormalize(next);
            }
            tau = (step == remaining) ? duration : tau + step;
            y = next;
            ++traj.accepted_steps;
            traj.samples.push_back({tau, dyn.jet(y), {}});

            const Jet3& prev_jet = traj.samples[traj.samples.size() - 2].jet;
            if (watch.exceeded(prev_jet, traj.samples.back().jet)) {
                traj.terminated_by = {Termination::Kind::Runaway, tau, "acceleration grew after the field support"};
                break;
            }
        }
    } catch (const std::domain_error& e) {
        traj.terminated_by = {Termination::Kind::DomainError, tau, e.what()};
    }

    // jerk for the second-order equations by finite differences of ẍ
    if (eom != EomKind::LorentzDirac && traj.samples.size() >= 2) {
        const std::size_t n = traj.samples.size();
        std::vector<double> taus(n);
        for (std::size_t i = 0; i < n; ++i) {
            taus[i] = traj.samples[i].tau;
        }
        std::array<std::vector<double>, 4> comp;
        for (int mu = 0; mu < 4; ++mu) {
            comp[mu].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                comp[mu][i] = traj.samples[i].jet.a[mu];
            }
            comp[mu] = finite_difference(taus, comp[mu]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            traj.samples[i].jet.j = FourVector(comp[0][i], comp[1][i], comp[2][i], comp[3][i]);
        }
    }

    annotate(traj, field, params);
    return traj;
}

std::optional<double> detect_runaway(const Trajectory& traj, double field_support_end, double runaway_factor)
{
    const auto& s = traj.samples;
    if (s.empty()) {
        throw std::invalid_argument("detect_runaway: empty trajectory");
    }
    auto magnitude = [](const Sample& smp) { return std::sqrt(std::max(minkowski_dot(smp.jet.a, smp.jet.a), 0.0)); };

    // last sample at or before the support end; the first sample if none is
    std::size_t ref = 0;
    for (std::size_t i = 0; i < s.size() && s[i].jet.x.t <= field_support_end; ++i) {
        ref = i;
    }
    const double threshold = runaway_factor * std::max(magnitude(s[ref]), 1e-12);
    for (std::size_t i = ref + 1; i < s.size(); ++i) {
        if (s[i].jet.x.t > field_support_end && magnitude(s[i]) > threshold) {
            return s[i].tau;
        }
    }
    return std::nullopt;
}

bool detect_preacceleration(const Trajectory& traj, double pulse_center, double pulse_width, double tol)
{
    const double limit = pulse_center - 5.0 * pulse_width;
    bool covered = false;
    double peak = 0.0;
    for (const Sample& smp : traj.samples) {
        if (smp.jet.x.t < limit) {
            covered = true;
            peak = std::max(peak, std::sqrt(std::max(minkowski_dot(smp.jet.a, smp.jet.a), 0.0)));
        }
    }
    if (!covered) {
        throw std::invalid_argument("detect_preacceleration: trajectory does not reach before the pulse window");
    }
    return peak > tol;
}

}  // namespace radreact
