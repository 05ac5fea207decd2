#pragma once

// Right-hand sides for the four equations of motion.
//
// The radiation-reacted second-order equation
//
//     m ẍ = q F ẋ - (2/3) q² η(ẍ, ẍ) ẋ
//
// is implicit in ẍ. Contracting it with itself (F ẋ is η-orthogonal to ẋ)
// leaves a quadratic for s = η(ẍ, ẍ),
//
//     k² n s² + m² s - F_L² = 0,   k = (2/3) q²,  n = -η(ẋ, ẋ),
//
// whose nonnegative root makes the equation explicit. On a g-normalized
// world-line n = 1 / (1 - ε).

#include <optional>
#include <string_view>

#include "radreact/fields.hpp"
#include "radreact/maxaccel.hpp"
#include "radreact/minkowski.hpp"

namespace radreact {

/// Physical mass, charge and the derived radiation scales.
class ParticleParams {
public:
    /// tau0 = (2/3) q² / m; a_max = 3m / (2q²) unless overridden (+inf allowed).
    /// Throws std::invalid_argument for m <= 0 or a non-positive override.
    ParticleParams(double m, double q, std::optional<double> a_max_override = std::nullopt);

    double m() const { return m_; }
    double q() const { return q_; }
    double tau0() const { return tau0_; }
    double a_max() const { return a_max_; }
    MaxAccelContext context() const { return MaxAccelContext(a_max_); }

private:
    double m_;
    double q_;
    double tau0_;
    double a_max_;
};

enum class EomKind { LorentzOnly, LorentzDirac, LandauLifshitz, MaxAccelSecondOrder };

std::string_view to_string(EomKind kind);
/// Accepts the snake_case names used in scenario files; nullopt otherwise.
std::optional<EomKind> eom_kind_from_string(std::string_view name);

/// Nonnegative root of k² s² + m² s - fl_sq = 0 with k = (2/3) q² / sqrt(1 - eps),
/// evaluated as 2 fl_sq / (m² + sqrt(m⁴ + 4 k² fl_sq)).
/// Throws std::domain_error for fl_sq < 0 or eps outside [0, 1).
double accel_sq_root(double fl_sq, const ParticleParams& params, double eps_correction = 0.0);

struct SelfConsistentRoot {
    double accel_sq = 0.0;
    double eps = 0.0;
    int iterations = 0;
};

/// accel_sq_root with ε = root / A_max² resolved by fixed-point iteration,
/// starting from ε = 0, to relative tolerance 1e-12.
SelfConsistentRoot accel_sq_root_self_consistent(double fl_sq, const ParticleParams& params);

/// Explicit acceleration of the second-order radiation-reacted equation for
/// the state (x, u) in field f. Solves the implicit equation exactly for the
/// given u, so the result satisfies it to rounding even when u is not
/// normalized. Requires u timelike (std::domain_error otherwise).
FourVector gho_accel(const FourVector& x, const FourVector& u, const FieldTensor& f, const ParticleParams& params);

struct LorentzDiracDerivative {
    FourVector dx;  // ẋ
    FourVector du;  // ẍ
    FourVector da;  // x⃛
};

/// Lorentz-Dirac equation m ẍ = q F ẋ + m τ0 (x⃛ - η(ẍ, ẍ) ẋ), solved for the jerk.
/// Throws std::domain_error when tau0 = 0.
LorentzDiracDerivative lorentz_dirac_rhs(const FourVector& x, const FourVector& u, const FourVector& a,
                                         const FieldTensor& f, const ParticleParams& params);

/// Landau-Lifshitz reduction of order:
///   ẍ = (q/m) F u + τ0 [ (q/m) Ḟ u + (q/m)² F (F u) - (q/m)² η(F u, F u) u ].
FourVector landau_lifshitz_accel(const FourVector& x, const FourVector& u, const FieldTensor& f,
                                 const FieldTensor& df_dtau, const ParticleParams& params);

/// Non-run-away nonrelativistic Lorentz-Dirac velocity for the pulse κ δ(t):
/// (qκ/m) e^{t/τ0} for t < 0 and qκ/m for t >= 0.
double ld_nonrunaway_pulse_response(double kappa, const ParticleParams& params, double t);

}  // namespace radreact
