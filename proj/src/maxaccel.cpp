#include "radreact/maxaccel.hpp"

#include <cmath>
#include <stdexcept>

namespace radreact {

MaxAccelContext::MaxAccelContext(double a_max) : a_max_(a_max)
{
    if (!(a_max > 0.0)) {
        throw std::invalid_argument("MaxAccelContext: a_max must be positive");
    }
}

bool MaxAccelContext::is_special_relativistic() const { return std::isinf(a_max_); }

double epsilon(double a_sq, const MaxAccelContext& ctx)
{
    if (!(a_sq >= 0.0)) {
        throw std::domain_error("epsilon: negative acceleration norm (non-spacelike acceleration)");
    }
    if (ctx.is_special_relativistic()) {
        return 0.0;
    }
    return a_sq / (ctx.a_max() * ctx.a_max());
}

double g_dot(const FourVector& v, const FourVector& w, const Jet3& jet, const MaxAccelContext& ctx)
{
    const double eps = epsilon(minkowski_dot(jet.a, jet.a), ctx);
    return (1.0 - eps) * minkowski_dot(v, w);
}

CausalClass causal_class(const FourVector& u, const Jet3& jet, const MaxAccelContext& ctx, double tol_null)
{
    const double n = g_dot(u, u, jet, ctx);
    if (std::abs(n) < tol_null) {
        return CausalClass::Null;
    }
    return n < 0.0 ? CausalClass::Timelike : CausalClass::Spacelike;
}

double proper_time_rescale(double dtau_eta, double eps)
{
    if (eps >= 1.0) {
        throw std::domain_error("proper_time_rescale: degenerate metric (eps >= 1)");
    }
    if (eps < 0.0 || dtau_eta < 0.0) {
        throw std::domain_error("proper_time_rescale: negative argument");
    }
    return std::sqrt(1.0 - eps) * dtau_eta;
}

double proper_time_relation_discrepancy(double eps, double eps_dot)
{
    return (1.0 - eps_dot) - proper_time_rescale(1.0, eps);
}

FourVector measurable_velocity(const Vec3& v3, double a_sq, const MaxAccelContext& ctx)
{
    const double eps = epsilon(a_sq, ctx);
    if (eps >= 1.0) {
        throw std::domain_error("measurable_velocity: a_sq at or beyond A_max^2");
    }
    const double c = 1.0 - eps;
    const double inner = 1.0 - c * dot(v3, v3);
    if (!(inner > 0.0)) {
        throw std::domain_error("measurable_velocity: kinematic domain violated");
    }
    const double scale = 1.0 / (std::sqrt(c) * std::sqrt(inner));
    return scale * FourVector(1.0, std::sqrt(c) * v3);
}

bool superluminal_condition(double a, double speed, const MaxAccelContext& ctx)
{
    if (ctx.is_special_relativistic()) {
        return false;
    }
    return a * speed > ctx.a_max();
}

double amax_for_charge(double m, double q)
{
    if (!(m > 0.0)) {
        throw std::invalid_argument("amax_for_charge: mass must be positive");
    }
    if (q == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 3.0 * m / (2.0 * q * q);
}

}  // namespace radreact
