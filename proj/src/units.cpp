#include "radreact/units.hpp"

#include <cmath>
#include <numbers>

#include "radreact/maxaccel.hpp"

namespace radreact::si {

double gaussian_charge_sq(double charge_coulomb)
{
    return charge_coulomb * charge_coulomb / (4.0 * std::numbers::pi * vacuum_permittivity);
}

double max_acceleration(double mass_kg, double charge_coulomb)
{
    // 3m/(2q²) carries s²/m³ once q² is in J·m; c⁴ restores m/s²
    const double c2 = speed_of_light * speed_of_light;
    return amax_for_charge(mass_kg, std::sqrt(gaussian_charge_sq(charge_coulomb))) * c2 * c2;
}

}  // namespace radreact::si
