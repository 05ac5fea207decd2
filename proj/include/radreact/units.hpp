#pragma once

// SI conversion. The engine itself works in c = 1 with Gaussian charges.

namespace radreact::si {

// CODATA 2018
inline constexpr double speed_of_light = 299'792'458.0;          // m/s
inline constexpr double elementary_charge = 1.602'176'634e-19;   // C
inline constexpr double electron_mass = 9.109'383'7015e-31;      // kg
inline constexpr double vacuum_permittivity = 8.854'187'8128e-12;  // F/m

/// q² / (4π ε0): the Gaussian squared charge expressed in J·m.
double gaussian_charge_sq(double charge_coulomb);

/// A_max = 3 m c⁴ / (2 q²) in m/s², q² taken in Gaussian form.
double max_acceleration(double mass_kg, double charge_coulomb);

}  // namespace radreact::si
