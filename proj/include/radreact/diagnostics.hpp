#pragma once

// Trajectory diagnostics: kinematic constraint residuals of the maximal
// acceleration metric, energy balance against the Larmor rate, the
// acceleration bound, the Υ coefficient and the Dirac radiation field.

#include <optional>
#include <span>
#include <vector>

#include "radreact/eom.hpp"
#include "radreact/fields.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

/// Right-hand side used for the third kinematic residual.
///   Corollary:   g(x⃛,ẋ) + g(ẍ,ẍ) - [ d/dτ(ε̇ η(ẋ,ẋ)/2) - ε̇ ]
///   Proposition: g(x⃛,ẋ) + g(ẍ,ẍ) - [ d/dτ(ε̇ η(ẋ,ẋ)/2) + ε̇ η(ẍ,ẋ) ]
enum class Kin3Convention { Corollary, Proposition };

struct KinematicResiduals {
    double r1 = 0.0;  // g(ẋ,ẋ) + 1
    double r2 = 0.0;  // g(ẍ,ẋ) - ε̇/2 η(ẋ,ẋ)
    double r3 = 0.0;
};

/// ε̇ = 2 η(x⃛, ẍ) / A_max², zero in the special relativistic limit.
double eps_dot_from_jet(const Jet3& jet, const MaxAccelContext& ctx);

/// `d_half_epsdot_norm` is the caller's τ-derivative of ε̇ η(ẋ,ẋ)/2 along the
/// trajectory (finite differences over samples).
KinematicResiduals kinematic_residuals(const Jet3& jet, const MaxAccelContext& ctx, double d_half_epsdot_norm,
                                       Kin3Convention convention = Kin3Convention::Corollary);

/// |Δ(m u⁰) - (W - R)| / max(1, |Δ(m u⁰)|) where W = ∫ q (F u)⁰ dτ and
/// R = ∫ (2/3) q² η(ẍ,ẍ) u⁰ dτ (omitted when include_radiation is false).
/// Trapezoid quadrature over samples with the h²/12 endpoint-derivative
/// correction on each interval (derivatives of the integrand by finite
/// differences), so the quadrature error is O(h⁴).
double energy_balance(const Trajectory& traj, const FieldConfig& field, const ParticleParams& params,
                      bool include_radiation = true);
/// √a_sq <= √2 √fl_sq / m + 1e-9 at every sample.
bool acceleration_bound_check(const Trajectory& traj, const ParticleParams& params);

enum class Beta2Convention { Sec6, Sec7 };

/// Coefficient β₂ of the higher-order field along the jet.
///   Sec6: (4/3) q² a² / ε̇
///   Sec7: (2/3) q² A_max² √(a²) / (2 η(x⃛, ẍ))
/// Absent where |ε̇| < 1e-14 (the coefficient is singular there).
std::optional<double> upsilon_beta2(const Jet3& jet, const ParticleParams& params, Beta2Convention convention);

/// F_{μν} = (4/3)(x⃛_μ ẍ_ν - x⃛_ν ẍ_μ) with η-lowered indices; the charge
/// factor is left to the caller.
FieldTensor dirac_radiation_field(const Jet3& jet);

/// Second-order finite-difference derivative of `values` sampled at the
/// strictly increasing `taus` (three-point formulas, one-sided at the ends).
std::vector<double> finite_difference(std::span<const double> taus, std::span<const double> values);

/// Fills every sample's DiagnosticsRecord from its jet.
void annotate(Trajectory& traj, const FieldConfig& field, const ParticleParams& params,
              Kin3Convention convention = Kin3Convention::Corollary);

}  // namespace radreact
