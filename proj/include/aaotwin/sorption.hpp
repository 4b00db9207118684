#pragma once

#include "aaotwin/quantities.hpp"

namespace aaotwin {

// Multilayer-adsorption parameters. v_m is the monolayer amount in the same
// units as the isotherm it is fitted from; e1_minus_el is the difference
// between first-layer and liquefaction heats in J/mol; t_mono_nm is the
// thickness of one adsorbed monolayer. The default energy gap keeps the film
// at low humidity thinner than the smallest receding meniscus, so the two
// branches only touch at the dry and saturated ends.
struct BetParams {
  double v_m = 1.0;
  double e1_minus_el_j_per_mol = 11000.0;
  double t_mono_nm = 0.3;
};

// Advancing angle applies while menisci form (adsorption), receding while
// they retreat (desorption). Equal angles are allowed and collapse the
// capillary hysteresis; the receding angle may never exceed the advancing.
struct ContactAngles {
  double advancing_deg = 70.0;
  double receding_deg = 38.0;
};

ContactAngles make_contact_angles(double advancing_deg, double receding_deg);

// Energy constant c = exp((E1 - EL) / (R T)).
double bet_c(double e1_minus_el_j_per_mol, Temperature t);

// Multilayer coverage v/v_m = c x / ((1 - x)(1 + (c - 1) x)); diverges at
// x = 1, which is rejected.
double bet_coverage(RelHumidity x, double c);

// Linearizing transform y = x / (v (1 - x)); exact BET data fall on the line
// y = 1/(v_m c) + x (c - 1)/(v_m c).
double bet_linear_point(RelHumidity x, double amount);

// Largest pore radius (nm) whose meniscus is stable at the given saturation
// ratio: r = -2 gamma V cos(theta) / (R T ln x). Requires 0 < x < 1 and
// theta in [0, 90) degrees.
double kelvin_radius(RelHumidity x, Temperature t, double contact_angle_deg,
                     const WaterProperties& water);

// Saturation ratio at which a pore of radius r_nm fills (advancing angle) or
// empties (receding angle): the exact inverse of kelvin_radius.
RelHumidity inverse_kelvin(double r_nm, Temperature t,
                           double contact_angle_deg,
                           const WaterProperties& water);

}  // namespace aaotwin
