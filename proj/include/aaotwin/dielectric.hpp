#pragma once

#include <vector>

#include "aaotwin/hysteresis.hpp"
#include "aaotwin/quantities.hpp"

namespace aaotwin {

// Logarithmic mixing inputs. porosity is shared with the pore distribution;
// c0_pf is the empty-cell geometry factor so that C = c0 * kappa_eff.
struct DielectricParams {
  double kappa_solid = 9.0;
  double kappa_water = constants::kKappaWater;
  double kappa_air = constants::kKappaAir;
  double c0_pf = 130.0;
  double porosity = 0.30;
};

// ln k_eff = (1-phi) ln k_solid + phi w ln k_water + phi (1-w) ln k_air,
// with w the water volume fraction of the pore space.
double effective_permittivity(const FilledFraction& fill,
                              const DielectricParams& params);

// C = c0 * kappa_eff; a mixture permittivity below every constituent (< 1)
// violates the mixing contract and is rejected.
Capacitance capacitance(double kappa_eff, const DielectricParams& params);

// Exponent n with C_wet / C_dry = (kappa_wet / kappa_dry)^n. Degenerate when
// the permittivities (or capacitances) coincide.
double morphology_exponent(Capacitance c_dry, Capacitance c_wet,
                           double kappa_dry, double kappa_wet);

enum class Branch { ascending, descending, unknown };

struct ResponsePoint {
  double x;
  Capacitance c;
};

// Capacitance against humidity along one quasi-static branch; x strictly
// increasing.
struct ResponseCurve {
  Branch branch = Branch::unknown;
  std::vector<ResponsePoint> points;
};

}  // namespace aaotwin
