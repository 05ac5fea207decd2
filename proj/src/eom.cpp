#include "radreact/eom.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace radreact {

namespace {

// Nonnegative root of k_sq s² + m² s - fl_sq = 0 without cancellation at small fl_sq.
double implicit_root(double fl_sq, double m, double k_sq)
{
    const double m2 = m * m;
    return 2.0 * fl_sq / (m2 + std::sqrt(m2 * m2 + 4.0 * k_sq * fl_sq));
}

// Rounding can push η(w, w) slightly below zero when w ≈ 0.
double clamp_force_sq(double fl_sq, const FourVector& w)
{
    if (fl_sq >= 0.0) {
        return fl_sq;
    }
    const double scale = w.t * w.t + w.x * w.x + w.y * w.y + w.z * w.z;
    if (fl_sq >= -1e-12 * scale) {
        return 0.0;
    }
    throw std::domain_error("gho_accel: Lorentz force is timelike (velocity not timelike?)");
}

}  // namespace

ParticleParams::ParticleParams(double m, double q, std::optional<double> a_max_override)
    : m_(m), q_(q), tau0_(0.0), a_max_(0.0)
{
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::invalid_argument("ParticleParams: mass must be positive and finite");
    }
    if (!std::isfinite(q)) {
        throw std::invalid_argument("ParticleParams: charge must be finite");
    }
    tau0_ = (2.0 / 3.0) * q * q / m;
    a_max_ = amax_for_charge(m, q);
    if (a_max_override) {
        if (!(*a_max_override > 0.0)) {
            throw std::invalid_argument("ParticleParams: a_max override must be positive");
        }
        a_max_ = *a_max_override;
    }
}

std::string_view to_string(EomKind kind)
{
    switch (kind) {
    case EomKind::LorentzOnly: return "lorentz_only";
    case EomKind::LorentzDirac: return "lorentz_dirac";
    case EomKind::LandauLifshitz: return "landau_lifshitz";
    case EomKind::MaxAccelSecondOrder: return "max_accel_second_order";
    }
    return "unknown";
}

std::optional<EomKind> eom_kind_from_string(std::string_view name)
{
    for (auto kind : {EomKind::LorentzOnly, EomKind::LorentzDirac, EomKind::LandauLifshitz,
                      EomKind::MaxAccelSecondOrder}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

double accel_sq_root(double fl_sq, const ParticleParams& params, double eps_correction)
{
    if (!(fl_sq >= 0.0)) {
        throw std::domain_error("accel_sq_root: negative Lorentz force norm");
    }
    if (!(eps_correction >= 0.0 && eps_correction < 1.0)) {
        throw std::domain_error("accel_sq_root: eps correction outside [0, 1)");
    }
    const double k = (2.0 / 3.0) * params.q() * params.q();
    return implicit_root(fl_sq, params.m(), k * k / (1.0 - eps_correction));
}

SelfConsistentRoot accel_sq_root_self_consistent(double fl_sq, const ParticleParams& params)
{
    const MaxAccelContext ctx = params.context();
    SelfConsistentRoot r;
    r.accel_sq = accel_sq_root(fl_sq, params, 0.0);
    constexpr int max_iterations = 100;
    while (r.iterations < max_iterations) {
        ++r.iterations;
        const double eps = epsilon(r.accel_sq, ctx);
        if (eps >= 1.0) {
            throw std::domain_error("accel_sq_root_self_consistent: acceleration reached A_max");
        }
        const double next = accel_sq_root(fl_sq, params, eps);
        const bool done = std::abs(next - r.accel_sq) <= 1e-12 * next;
        r.accel_sq = next;
        r.eps = epsilon(next, ctx);
        if (done) {
            break;
        }
    }
    return r;
}

FourVector gho_accel(const FourVector& /*x*/, const FourVector& u, const FieldTensor& f, const ParticleParams& params)
{
    const double n = -minkowski_dot(u, u);
    if (!(n > 0.0)) {
        throw std::domain_error("gho_accel: velocity is not timelike");
    }
    const FourVector force = params.q() * mat_vec(raise_mixed(f), u);
    const double fl_sq = clamp_force_sq(minkowski_dot(force, force), force);
    const double k = (2.0 / 3.0) * params.q() * params.q();
    const double s = implicit_root(fl_sq, params.m(), k * k * n);
    return force / params.m() - (params.tau0() * s) * u;
}

LorentzDiracDerivative lorentz_dirac_rhs(const FourVector& /*x*/, const FourVector& u, const FourVector& a,
                                         const FieldTensor& f, const ParticleParams& params)
{
    if (params.tau0() == 0.0) {
        throw std::domain_error("lorentz_dirac_rhs: tau0 = 0 makes the equation degenerate");
    }
    const FourVector lorentz = lorentz_accel(f, u, params.q(), params.m());
    const FourVector jerk = (a - lorentz) / params.tau0() + minkowski_dot(a, a) * u;
    return {u, a, jerk};
}

FourVector landau_lifshitz_accel(const FourVector& /*x*/, const FourVector& u, const FieldTensor& f,
                                 const FieldTensor& df_dtau, const ParticleParams& params)
{
    const double qm = params.q() / params.m();
    const Mat4 mixed = raise_mixed(f);
    const FourVector fu = mat_vec(mixed, u);
    const FourVector ffu = mat_vec(mixed, fu);
    const FourVector dfu = mat_vec(raise_mixed(df_dtau), u);
    const FourVector reaction = qm * dfu + (qm * qm) * ffu - (qm * qm * minkowski_dot(fu, fu)) * u;
    return qm * fu + params.tau0() * reaction;
}

double ld_nonrunaway_pulse_response(double kappa, const ParticleParams& params, double t)
{
    if (!(params.tau0() > 0.0)) {
        throw std::domain_error("ld_nonrunaway_pulse_response: tau0 must be positive");
    }
    const double jump = params.q() * kappa / params.m();
    return t < 0.0 ? jump * std::exp(t / params.tau0()) : jump;
}

}  // namespace radreact
