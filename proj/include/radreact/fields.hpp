#pragma once

// External field configurations, the Lorentz force and the covariant Larmor rate.

#include <variant>
#include <vector>

#include "radreact/maxaccel.hpp"
#include "radreact/minkowski.hpp"

namespace radreact {

struct UniformField {
    Vec3 e3;
    Vec3 b3;
};

/// Ideal Penning trap: axial B = (0, 0, b0) and the quadrupole
/// Φ = V0 (2z² - x² - y²) / (2 d²), giving E = (V0/d²)(x, y, -2z).
struct PenningTrap {
    double b0 = 0.0;
    double v0_over_d2 = 0.0;
};

/// Electric pulse of area kappa along `axis`, Gaussian in lab coordinate time
/// centred on t = 0. Regularizes κ δ(t) as width → 0.
struct GaussianPulse {
    double kappa = 0.0;
    double width = 1.0;
    Vec3 axis{1.0, 0.0, 0.0};
};

struct FieldConfig;

struct Superposition {
    std::vector<FieldConfig> parts;
};

struct FieldConfig {
    std::variant<UniformField, PenningTrap, GaussianPulse, Superposition> kind;
};

/// Throws std::invalid_argument for width <= 0, a non-unit pulse axis or an
/// empty superposition.
void validate(const FieldConfig& cfg);

FieldTensor field_at(const FieldConfig& cfg, const FourVector& x);

/// dF/dτ along a world-line through x with velocity u. Uniform fields give
/// exactly zero, the trap its exact (linear) gradient, pulses a central
/// difference in t with step width/100.
FieldTensor field_derivative_along(const FieldConfig& cfg, const FourVector& x, const FourVector& u);

/// Coordinate time after which the configuration exerts no force worth
/// tracking: -inf for a field-free configuration, +inf for static nonzero
/// fields, 5 widths past a pulse centre.
double field_support_end(const FieldConfig& cfg);

/// Largest step that resolves every pulse in the configuration (width/20);
/// +inf without pulses.
double field_step_bound(const FieldConfig& cfg);

/// (q/m) F^μ_ν u^ν.
FourVector lorentz_accel(const FieldTensor& f, const FourVector& u, double q, double m);

/// F_L² = η(w, w) with w = q F^μ_ν u^ν. Nonnegative for timelike u.
double lorentz_force_sq(const FieldTensor& f, const FourVector& u, double q);

/// Covariant Larmor rate Ṗ^μ = (2/3) q² η(ẍ, ẍ) ẋ^μ.
FourVector larmor_rate(const Jet3& jet, double q);

}  // namespace radreact
