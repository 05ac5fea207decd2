#include "radreact/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radreact {

namespace {

constexpr double beta2_singular_tol = 1e-14;

// ε computed with a_sq clamped at zero; rounding can leave η(ẍ,ẍ) at -1e-30
// on non-geometric trajectories.
double clamped_eps(double a_sq, const MaxAccelContext& ctx) { return epsilon(std::max(a_sq, 0.0), ctx); }

KinematicResiduals residuals_with_eps(const Jet3& jet, double eps, double eps_dot, double d_half_epsdot_norm,
                                      Kin3Convention convention)
{
    const double c = 1.0 - eps;
    const double uu = minkowski_dot(jet.u, jet.u);
    const double au = minkowski_dot(jet.a, jet.u);
    KinematicResiduals r;
    r.r1 = c * uu + 1.0;
    r.r2 = c * au - 0.5 * eps_dot * uu;
    const double lhs = c * minkowski_dot(jet.j, jet.u) + c * minkowski_dot(jet.a, jet.a);
    const double rhs = convention == Kin3Convention::Corollary ? d_half_epsdot_norm - eps_dot
                                                                : d_half_epsdot_norm + eps_dot * au;
    r.r3 = lhs - rhs;
    return r;
}

double eps_dot_clamped(const Jet3& jet, const MaxAccelContext& ctx)
{
    if (ctx.is_special_relativistic()) {
        return 0.0;
    }
    return 2.0 * minkowski_dot(jet.j, jet.a) / (ctx.a_max() * ctx.a_max());
}

}  // namespace

double eps_dot_from_jet(const Jet3& jet, const MaxAccelContext& ctx) { return eps_dot_clamped(jet, ctx); }

KinematicResiduals kinematic_residuals(const Jet3& jet, const MaxAccelContext& ctx, double d_half_epsdot_norm,
                                       Kin3Convention convention)
{
    const double eps = epsilon(minkowski_dot(jet.a, jet.a), ctx);
    return residuals_with_eps(jet, eps, eps_dot_from_jet(jet, ctx), d_half_epsdot_norm, convention);
}

std::vector<double> finite_difference(std::span<const double> taus, std::span<const double> values)
{
    if (taus.size() != values.size()) {
        throw std::invalid_argument("finite_difference: size mismatch");
    }
    const std::size_t n = taus.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) {
        return d;
    }
    if (n == 2) {
        const double slope = (values[1] - values[0]) / (taus[1] - taus[0]);
        d[0] = d[1] = slope;
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = taus[i] - taus[i - 1];
        const double h2 = taus[i + 1] - taus[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * values[i - 1] + (h2 - h1) / (h1 * h2) * values[i] +
               h1 / (h2 * (h1 + h2)) * values[i + 1];
    }
    // one-sided three-point formulas
    {
        const double h1 = taus[1] - taus[0];
        const double h2 = taus[2] - taus[1];
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * values[0] + (h1 + h2) / (h1 * h2) * values[1] -
               h1 / (h2 * (h1 + h2)) * values[2];
    }
    {
        const double h1 = taus[n - 2] - taus[n - 3];
        const double h2 = taus[n - 1] - taus[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * values[n - 3] - (h1 + h2) / (h1 * h2) * values[n - 2] +
                   (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * values[n - 1];
    }
    return d;
}

double energy_balance(const Trajectory& traj, const FieldConfig& field, const ParticleParams& params,
                      bool include_radiation)
{
    const auto& s = traj.samples;
    if (s.size() < 2) {
        return 0.0;
    }
    const double q = params.q();
    const double m = params.m();
    std::vector<double> taus(s.size());
    std::vector<double> power(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Jet3& jet = s[i].jet;
        const FieldTensor f = field_at(field, jet.x);
        double p = q * mat_vec(raise_mixed(f), jet.u).t;
        if (include_radiation) {
            p -= larmor_rate(jet, q).t;
        }
        taus[i] = s[i].tau;
        power[i] = p;
    }
    // trapezoid plus the h²/12 endpoint-derivative correction on every interval
    const std::vector<double> dpower = finite_difference(taus, power);
    double net = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double h = taus[i + 1] - taus[i];
        net += 0.5 * h * (power[i] + power[i + 1]) + h * h / 12.0 * (dpower[i] - dpower[i + 1]);
    }
    const double delta = m * (s.back().jet.u.t - s.front().jet.u.t);
    return std::abs(delta - net) / std::max(1.0, std::abs(delta));
}

bool acceleration_bound_check(const Trajectory& traj, const ParticleParams& params)
{
    return std::all_of(traj.samples.begin(), traj.samples.end(), [&](const Sample& smp) {
        const double a = std::sqrt(std::max(smp.diag.a_sq, 0.0));
        return a <= std::sqrt(2.0) * std::sqrt(std::max(smp.diag.fl_sq, 0.0)) / params.m() + 1e-9;
    });
}

std::optional<double> upsilon_beta2(const Jet3& jet, const ParticleParams& params, Beta2Convention convention)
{
    const MaxAccelContext ctx = params.context();
    const double eps_dot = eps_dot_clamped(jet, ctx);
    if (std::abs(eps_dot) < beta2_singular_tol) {
        return std::nullopt;
    }
    const double q2 = params.q() * params.q();
    const double a_sq = std::max(minkowski_dot(jet.a, jet.a), 0.0);
    if (convention == Beta2Convention::Sec6) {
        return (4.0 / 3.0) * q2 * a_sq / eps_dot;
    }
    const double a_max = ctx.a_max();
    return (2.0 / 3.0) * q2 * a_max * a_max * std::sqrt(a_sq) / (2.0 * minkowski_dot(jet.j, jet.a));
}

FieldTensor dirac_radiation_field(const Jet3& jet)
{
    const auto jl = lower(jet.j).components();
    const auto al = lower(jet.a).components();
    Mat4 m{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            m[mu][nu] = (4.0 / 3.0) * (jl[mu] * al[nu] - jl[nu] * al[mu]);
        }
    }
    return FieldTensor::from_lowered(m);
}

void annotate(Trajectory& traj, const FieldConfig& field, const ParticleParams& params, Kin3Convention convention)
{
    auto& s = traj.samples;
    const MaxAccelContext ctx = params.context();
    const std::size_t n = s.size();

    std::vector<double> taus(n);
    std::vector<double> half_epsdot_norm(n);
    std::vector<double> eps_dots(n);
    for (std::size_t i = 0; i < n; ++i) {
        taus[i] = s[i].tau;
        eps_dots[i] = eps_dot_clamped(s[i].jet, ctx);
        half_epsdot_norm[i] = 0.5 * eps_dots[i] * minkowski_dot(s[i].jet.u, s[i].jet.u);
    }
    const std::vector<double> d_half = finite_difference(taus, half_epsdot_norm);

    for (std::size_t i = 0; i < n; ++i) {
        const Jet3& jet = s[i].jet;
        DiagnosticsRecord& d = s[i].diag;
        d.a_sq = minkowski_dot(jet.a, jet.a);
        d.eps = clamped_eps(d.a_sq, ctx);
        d.eps_dot = eps_dots[i];
        const KinematicResiduals r = residuals_with_eps(jet, d.eps, d.eps_dot, d_half[i], convention);
        d.g_norm_residual = r.r1;
        d.kin2_residual = r.r2;
        d.kin3_residual = r.r3;
        d.fl_sq = lorentz_force_sq(field_at(field, jet.x), jet.u, params.q());
        d.radiated_power_t = larmor_rate(jet, params.q()).t;
        const double a = std::sqrt(std::max(d.a_sq, 0.0));
        d.bound_margin = std::sqrt(2.0) * std::sqrt(std::max(d.fl_sq, 0.0)) / params.m() - a;
        d.superluminal = superluminal_condition(a, norm(jet.u.spatial()) / jet.u.t, ctx);
        d.beta2 = upsilon_beta2(jet, params, Beta2Convention::Sec6);
    }
}

}  // namespace radreact
