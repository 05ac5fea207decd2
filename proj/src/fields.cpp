#include "radreact/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace radreact {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double inf = std::numeric_limits<double>::infinity();

double pulse_profile(const GaussianPulse& p, double t)
{
    return p.kappa * std::exp(-t * t / (2.0 * p.width * p.width)) / (p.width * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

void validate(const FieldConfig& cfg)
{
    std::visit(overloaded{
                   [](const UniformField&) {},
                   [](const PenningTrap&) {},
                   [](const GaussianPulse& p) {
                       if (!(p.width > 0.0)) {
                           throw std::invalid_argument("gaussian_pulse: width must be positive");
                       }
                       if (std::abs(norm(p.axis) - 1.0) > 1e-12) {
                           throw std::invalid_argument("gaussian_pulse: axis must be a unit vector");
                       }
                   },
                   [](const Superposition& s) {
                       if (s.parts.empty()) {
                           throw std::invalid_argument("superposition: parts must be non-empty");
                       }
                       for (const auto& part : s.parts) {
                           validate(part);
                       }
                   },
               },
               cfg.kind);
}

FieldTensor field_at(const FieldConfig& cfg, const FourVector& x)
{
    return std::visit(overloaded{
                          [](const UniformField& u) { return FieldTensor{u.e3, u.b3}; },
                          [&](const PenningTrap& p) {
                              return FieldTensor{p.v0_over_d2 * Vec3{x.x, x.y, -2.0 * x.z}, Vec3{0.0, 0.0, p.b0}};
                          },
                          [&](const GaussianPulse& p) { return FieldTensor{pulse_profile(p, x.t) * p.axis, Vec3{}}; },
                          [&](const Superposition& s) {
                              FieldTensor sum;
                              for (const auto& part : s.parts) {
                                  sum += field_at(part, x);
                              }
                              return sum;
                          },
                      },
                      cfg.kind);
}

FieldTensor field_derivative_along(const FieldConfig& cfg, const FourVector& x, const FourVector& u)
{
    return std::visit(overloaded{
                          [](const UniformField&) { return FieldTensor{}; },
                          [&](const PenningTrap& p) {
                              return FieldTensor{p.v0_over_d2 * Vec3{u.x, u.y, -2.0 * u.z}, Vec3{}};
                          },
                          [&](const GaussianPulse& p) {
                              const double h = p.width / 100.0;
                              const double dedt = (pulse_profile(p, x.t + h) - pulse_profile(p, x.t - h)) / (2.0 * h);
                              return FieldTensor{(dedt * u.t) * p.axis, Vec3{}};
                          },
                          [&](const Superposition& s) {
                              FieldTensor sum;
                              for (const auto& part : s.parts) {
                                  sum += field_derivative_along(part, x, u);
                              }
                              return sum;
                          },
                      },
                      cfg.kind);
}

double field_support_end(const FieldConfig& cfg)
{
    return std::visit(overloaded{
                          [](const UniformField& u) {
                              return (u.e3 == Vec3{} && u.b3 == Vec3{}) ? -inf : inf;
                          },
                          [](const PenningTrap& p) { return (p.b0 == 0.0 && p.v0_over_d2 == 0.0) ? -inf : inf; },
                          [](const GaussianPulse& p) { return p.kappa == 0.0 ? -inf : 5.0 * p.width; },
                          [](const Superposition& s) {
                              double end = -inf;
                              for (const auto& part : s.parts) {
                                  end = std::max(end, field_support_end(part));
                              }
                              return end;
                          },
                      },
                      cfg.kind);
}

double field_step_bound(const FieldConfig& cfg)
{
    return std::visit(overloaded{
                          [](const UniformField&) { return inf; },
                          [](const PenningTrap&) { return inf; },
                          [](const GaussianPulse& p) { return p.width / 20.0; },
                          [](const Superposition& s) {
                              double bound = inf;
                              for (const auto& part : s.parts) {
                                  bound = std::min(bound, field_step_bound(part));
                              }
                              return bound;
                          },
                      },
                      cfg.kind);
}

FourVector lorentz_accel(const FieldTensor& f, const FourVector& u, double q, double m)
{
    if (!(m > 0.0)) {
        throw std::invalid_argument("lorentz_accel: mass must be positive");
    }
    return (q / m) * mat_vec(raise_mixed(f), u);
}

double lorentz_force_sq(const FieldTensor& f, const FourVector& u, double q)
{
    const FourVector w = q * mat_vec(raise_mixed(f), u);
    return minkowski_dot(w, w);
}

FourVector larmor_rate(const Jet3& jet, double q)
{
    return (2.0 / 3.0) * q * q * minkowski_dot(jet.a, jet.a) * jet.u;
}

}  // namespace radreact
