#pragma once

// Geometry of maximal acceleration: the conformal metric g = (1 - ε) η with
// ε = η(ẍ, ẍ) / A_max², and the kinematics that follow from it.

#include <limits>

#include "radreact/minkowski.hpp"

namespace radreact {

/// Maximal n-acceleration in c = 1 units. +infinity selects the special
/// relativistic limit (ε ≡ 0) through the same code paths.
class MaxAccelContext {
public:
    explicit MaxAccelContext(double a_max = std::numeric_limits<double>::infinity());

    double a_max() const { return a_max_; }
    bool is_special_relativistic() const;

private:
    double a_max_;
};

/// Third-order jet of a world-line: position, velocity, acceleration, jerk.
struct Jet3 {
    FourVector x;
    FourVector u;
    FourVector a;
    FourVector j;
};

/// ε = a_sq / A_max². Throws std::domain_error for a_sq < 0 (timelike
/// acceleration is not admissible along a timelike world-line).
double epsilon(double a_sq, const MaxAccelContext& ctx);

/// g(v, w) = (1 - ε) η(v, w) with ε evaluated on jet.a.
double g_dot(const FourVector& v, const FourVector& w, const Jet3& jet, const MaxAccelContext& ctx);

enum class CausalClass { Timelike, Null, Spacelike };

constexpr double default_null_tolerance = 1e-12;

/// Causal character of u under g along the given jet; |g(u,u)| < tol_null is Null.
CausalClass causal_class(const FourVector& u, const Jet3& jet, const MaxAccelContext& ctx,
                         double tol_null = default_null_tolerance);

/// dτ_g = sqrt(1 - ε) dτ_η. Throws std::domain_error for ε ≥ 1 (degenerate
/// metric) and for negative ε or dτ_η.
double proper_time_rescale(double dtau_eta, double eps);

/// Difference between the literal clock relation dτ_g = (1 - ε̇) dτ_η and the
/// metric-consistent sqrt(1 - ε) form, per unit dτ_η.
double proper_time_relation_discrepancy(double eps, double eps_dot);

/// Measurable n-velocity for coordinate 3-velocity v3 on a curve with
/// n-acceleration squared a_sq:
///   (1/sqrt(1-ε)) (1/sqrt(1-(1-ε)|v3|²)) (1, sqrt(1-ε) v3).
/// Throws std::domain_error when a_sq is outside [0, A_max²) or the inner
/// root is not positive.
FourVector measurable_velocity(const Vec3& v3, double a_sq, const MaxAccelContext& ctx);

/// Necessary condition for superluminal motion: a · |v| > A_max (strict).
bool superluminal_condition(double a, double speed, const MaxAccelContext& ctx);

/// A_max = 3 m / (2 q²) in natural units (c = 1, Gaussian charge).
/// Returns +infinity for an uncharged particle.
double amax_for_charge(double m, double q);

}  // namespace radreact
