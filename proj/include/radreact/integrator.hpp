#pragma once

// Time stepping of the equations of motion.
//
// The second-order radiation-reacted equation is advanced in g-proper time,
// the other three in η-proper time. Every trajectory records coordinate time
// in jet.x.t, which is what cross-equation comparisons should use.

#include <cstddef>
#include <optional>

#include "radreact/eom.hpp"
#include "radreact/fields.hpp"
#include "radreact/trajectory.hpp"

namespace radreact {

enum class StepMethod { RK4Fixed, RKF45Adaptive };

struct IntegratorConfig {
    StepMethod method = StepMethod::RKF45Adaptive;
    double dt = 1e-3;  // fixed step for RK4, initial step for RKF45
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Project ẋ back onto g(ẋ, ẋ) = -1 (η(ẋ, ẋ) = -1 for the non-geometric
    /// equations) after every accepted step.
    bool renormalize = true;
    std::size_t max_steps = 10'000'000;
    double runaway_factor = 1e3;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct ParticleState {
    FourVector x;
    FourVector u;
    /// Acceleration; part of the state only for the Lorentz-Dirac equation.
    FourVector a;
};

/// u s with s = 1 / sqrt((1 - eps)(-η(u, u))), so that (1 - eps) η(u', u') = -1.
/// Throws std::domain_error for eps >= 1 or non-timelike u.
FourVector renormalize_velocity(const FourVector& u, double eps);

/// Rescales u so that g(u, u) = -1 with ε taken from the acceleration the
/// second-order equation assigns to the rescaled velocity itself.
FourVector self_consistent_velocity(const FourVector& x, const FourVector& u, const FieldConfig& field,
                                    const ParticleParams& params);

/// Builds a valid initial state from a lab position and coordinate 3-velocity
/// (|v| < 1). For the second-order radiation-reacted equation the velocity is
/// g-normalized self-consistently. For Lorentz-Dirac the initial acceleration
/// is `seed_accel3` made η-orthogonal to u, or the Lorentz acceleration when
/// no seed is given.
ParticleState make_initial_state(const FourVector& position, const Vec3& velocity3, const FieldConfig& field,
                                 EomKind eom, const ParticleParams& params,
                                 const std::optional<Vec3>& seed_accel3 = std::nullopt);

/// Advances `initial` over [0, duration] in the evolution parameter and
/// returns the sampled trajectory with jets and diagnostics filled in.
/// Stops early on run-away (after the field support ends), step-size
/// underflow or an equation-of-motion domain error.
/// Throws std::invalid_argument when the initial state or config is invalid.
Trajectory integrate(const ParticleState& initial, const FieldConfig& field, EomKind eom,
                     const ParticleParams& params, const IntegratorConfig& icfg, double duration);

/// First τ after coordinate time `field_support_end` at which √η(ẍ, ẍ) exceeds
/// runaway_factor times its value at field_support_end (floored at 1e-12).
std::optional<double> detect_runaway(const Trajectory& traj, double field_support_end,
                                     double runaway_factor = 1e3);

/// True when any sample with coordinate time strictly before
/// pulse_center - 5 pulse_width has
/// √η(ẍ, ẍ) > tol. Throws std::invalid_argument if no sample lies there.
bool detect_preacceleration(const Trajectory& traj, double pulse_center, double pulse_width, double tol);

}  // namespace radreact
