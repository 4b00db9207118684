#include "aaotwin/dielectric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aaotwin {

namespace {

void validate_params(const DielectricParams& p) {
  if (!std::isfinite(p.kappa_solid) || p.kappa_solid < 1.0) {
    throw std::invalid_argument("solid permittivity must be >= 1");
  }
  if (!std::isfinite(p.kappa_water) || p.kappa_water < 1.0 ||
      !std::isfinite(p.kappa_air) || p.kappa_air < 1.0) {
    throw std::invalid_argument("phase permittivities must be >= 1");
  }
  if (!std::isfinite(p.c0_pf) || p.c0_pf <= 0.0) {
    throw std::invalid_argument("geometry factor c0 must be positive");
  }
  if (!std::isfinite(p.porosity) || p.porosity < 0.0 || p.porosity >= 1.0) {
    throw std::invalid_argument("porosity must lie in [0, 1)");
  }
}

}  // namespace

double effective_permittivity(const FilledFraction& fill,
                              const DielectricParams& params) {
  validate_params(params);
  if (fill.liquid < 0.0 || fill.liquid > 1.0 || fill.film < 0.0 ||
      fill.film > 1.0) {
    throw std::invalid_argument("fill fractions must lie in [0, 1]");
  }
  const double w = water_volume_fraction(fill);
  const double phi = params.porosity;
  const double ln_k = (1.0 - phi) * std::log(params.kappa_solid) +
                      phi * w * std::log(params.kappa_water) +
                      phi * (1.0 - w) * std::log(params.kappa_air);
  return std::exp(ln_k);
}

Capacitance capacitance(double kappa_eff, const DielectricParams& params) {
  validate_params(params);
  if (!std::isfinite(kappa_eff) || kappa_eff < 1.0) {
    throw std::domain_error(
        "effective permittivity " + std::to_string(kappa_eff) +
        " below 1 violates the mixing contract");
  }
  return Capacitance::from_pf(params.c0_pf * kappa_eff);
}

double morphology_exponent(Capacitance c_dry, Capacitance c_wet,
                           double kappa_dry, double kappa_wet) {
  if (c_dry.pf() <= 0.0 || c_wet.pf() <= 0.0) {
    throw std::domain_error("capacitances must be positive");
  }
  if (!std::isfinite(kappa_dry) || !std::isfinite(kappa_wet) ||
      kappa_dry <= 0.0 || kappa_wet <= 0.0) {
    throw std::domain_error("permittivities must be positive");
  }
  if (kappa_dry == kappa_wet) {
    throw std::domain_error(
        "equal dry and wet permittivities leave the exponent undefined");
  }
  return std::log(c_wet.pf() / c_dry.pf()) / std::log(kappa_wet / kappa_dry);
}

}  // namespace aaotwin
