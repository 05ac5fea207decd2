#pragma once

// Random inputs for property tests. Every generator takes the engine by
// reference so a test owns its seed.

#include <cmath>
#include <random>

#include "radreact/minkowski.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double log_uniform(Rng& rng, double lo, double hi) { return lo * std::pow(hi / lo, uniform(rng, 0.0, 1.0)); }

inline radreact::Vec3 vec3(Rng& rng, double scale = 1.0)
{
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

inline radreact::FourVector four_vector(Rng& rng, double scale = 1.0)
{
    return {uniform(rng, -scale, scale), vec3(rng, scale)};
}

// 3-velocity with |v| < max_speed
inline radreact::Vec3 velocity(Rng& rng, double max_speed = 0.95)
{
    radreact::Vec3 dir = vec3(rng);
    while (radreact::norm(dir) < 1e-3) {
        dir = vec3(rng);
    }
    return dir * (uniform(rng, 0.0, max_speed) / radreact::norm(dir));
}

// future-pointing, η-normalized
inline radreact::FourVector unit_timelike(Rng& rng, double max_speed = 0.95)
{
    const radreact::Vec3 v = velocity(rng, max_speed);
    const double gamma = 1.0 / std::sqrt(1.0 - radreact::dot(v, v));
    return gamma * radreact::FourVector(1.0, v);
}

// timelike with arbitrary positive scale
inline radreact::FourVector timelike(Rng& rng)
{
    return log_uniform(rng, 0.1, 10.0) * unit_timelike(rng);
}

// spacelike vector η-orthogonal to u
inline radreact::FourVector orthogonal_to(Rng& rng, const radreact::FourVector& u, double scale = 1.0)
{
    const radreact::FourVector w = four_vector(rng, scale);
    return w + (radreact::minkowski_dot(w, u) / -radreact::minkowski_dot(u, u)) * u;
}

inline radreact::FieldTensor field(Rng& rng, double scale = 1.0) { return {vec3(rng, scale), vec3(rng, scale)}; }

}  // namespace gen
