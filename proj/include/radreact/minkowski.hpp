#pragma once

// Four-vector algebra on flat Minkowski space, signature (-,+,+,+), c = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace radreact {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Contravariant four-vector (t, x, y, z). Construction rejects NaN/Inf
/// components with std::domain_error, so arithmetic that overflows surfaces
/// as a domain error instead of propagating silently.
class FourVector {
    // false for NaN and ±Inf; usable in constant evaluation
    static constexpr bool finite(double v) { return v - v == 0.0; }

public:
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_)
    {
        if (!finite(t) || !finite(x) || !finite(y) || !finite(z)) {
            throw std::domain_error("FourVector: non-finite component");
        }
    }
    constexpr FourVector(double t_, const Vec3& s) : FourVector(t_, s.x, s.y, s.z) {}

    constexpr Vec3 spatial() const { return {x, y, z}; }

    constexpr double operator[](int mu) const
    {
        switch (mu) {
        case 0: return t;
        case 1: return x;
        case 2: return y;
        default: return z;
        }
    }

    constexpr std::array<double, 4> components() const { return {t, x, y, z}; }
    static constexpr FourVector from_components(const std::array<double, 4>& c)
    {
        return {c[0], c[1], c[2], c[3]};
    }

    friend constexpr FourVector operator+(const FourVector& a, const FourVector& b)
    {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr FourVector operator-(const FourVector& a, const FourVector& b)
    {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr FourVector operator-(const FourVector& a) { return {-a.t, -a.x, -a.y, -a.z}; }
    friend constexpr FourVector operator*(double s, const FourVector& a)
    {
        return {s * a.t, s * a.x, s * a.y, s * a.z};
    }
    friend constexpr FourVector operator*(const FourVector& a, double s) { return s * a; }
    friend constexpr FourVector operator/(const FourVector& a, double s)
    {
        return {a.t / s, a.x / s, a.y / s, a.z / s};
    }
    friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

/// η(a, b) = -a.t b.t + a.x b.x + a.y b.y + a.z b.z
constexpr double minkowski_dot(const FourVector& a, const FourVector& b)
{
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Index lowering with η: (a_0, a_1, a_2, a_3) = (-a^0, a^1, a^2, a^3).
constexpr FourVector lower(const FourVector& a) { return {-a.t, a.x, a.y, a.z}; }

/// Largest absolute component.
inline double max_abs(const FourVector& a)
{
    return std::max({std::abs(a.t), std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}

using Mat4 = std::array<std::array<double, 4>, 4>;

/// m · v with v treated as a column of contravariant components.
FourVector mat_vec(const Mat4& m, const FourVector& v);

/// Electromagnetic field strength F_{μν} at one event, stored as (E, B).
///
/// Index convention (signature -,+,+,+): F_{i0} = E_i, F_{0i} = -E_i,
/// F_{12} = B_z, F_{23} = B_x, F_{31} = B_y. With this placement the mixed
/// tensor F^μ_ν u^ν reproduces q(E + v × B) for the spatial force and q E·v
/// for the power. Antisymmetry holds by construction.
struct FieldTensor {
    Vec3 e;
    Vec3 b;

    /// Covariant matrix F_{μν}.
    Mat4 lowered() const;
    /// Inverse of lowered(); only the antisymmetric part of m is read.
    static FieldTensor from_lowered(const Mat4& m);

    FieldTensor& operator+=(const FieldTensor& o)
    {
        e += o.e;
        b += o.b;
        return *this;
    }
    friend FieldTensor operator+(FieldTensor a, const FieldTensor& o) { return a += o; }
    friend FieldTensor operator-(FieldTensor a, const FieldTensor& o)
    {
        a.e -= o.e;
        a.b -= o.b;
        return a;
    }
    friend FieldTensor operator*(double s, FieldTensor a)
    {
        a.e *= s;
        a.b *= s;
        return a;
    }
    friend bool operator==(const FieldTensor&, const FieldTensor&) = default;
};

/// Mixed tensor F^μ_ν = η^{μρ} F_{ρν}.
Mat4 raise_mixed(const FieldTensor& f);

}  // namespace radreact
