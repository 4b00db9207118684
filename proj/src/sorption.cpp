#include "aaotwin/sorption.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aaotwin {

namespace {

double cos_contact_angle(double theta_deg) {
  if (!std::isfinite(theta_deg) || theta_deg < 0.0 || theta_deg >= 90.0) {
    throw std::domain_error("contact angle " + std::to_string(theta_deg) +
                            " deg outside [0, 90)");
  }
  return std::cos(theta_deg * std::numbers::pi / 180.0);
}

}  // namespace

ContactAngles make_contact_angles(double advancing_deg, double receding_deg) {
  cos_contact_angle(advancing_deg);
  cos_contact_angle(receding_deg);
  if (receding_deg > advancing_deg) {
    throw std::invalid_argument("receding contact angle " +
                                std::to_string(receding_deg) +
                                " deg exceeds advancing " +
                                std::to_string(advancing_deg) + " deg");
  }
  return ContactAngles{advancing_deg, receding_deg};
}

double bet_c(double e1_minus_el_j_per_mol, Temperature t) {
  if (!std::isfinite(e1_minus_el_j_per_mol)) {
    throw std::invalid_argument("E1 - EL must be finite");
  }
  return std::exp(e1_minus_el_j_per_mol /
                  (constants::kGasConstant * t.kelvin()));
}

double bet_coverage(RelHumidity x, double c) {
  if (!std::isfinite(c) || c <= 0.0) {
    throw std::domain_error("BET energy constant must be positive");
  }
  const double xf = x.fraction();
  if (xf >= 1.0) {
    throw std::domain_error(
        "BET coverage is singular at saturation (x = 1)");
  }
  return c * xf / ((1.0 - xf) * (1.0 + (c - 1.0) * xf));
}

double bet_linear_point(RelHumidity x, double amount) {
  const double xf = x.fraction();
  if (xf <= 0.0 || xf >= 1.0) {
    throw std::domain_error("BET transform requires 0 < x < 1, got x = " +
                            std::to_string(xf));
  }
  if (!std::isfinite(amount) || amount <= 0.0) {
    throw std::domain_error("adsorbed amount must be positive");
  }
  return xf / (amount * (1.0 - xf));
}

double kelvin_radius(RelHumidity x, Temperature t, double contact_angle_deg,
                     const WaterProperties& water) {
  const double xf = x.fraction();
  if (xf <= 0.0 || xf >= 1.0) {
    throw std::domain_error("meniscus radius requires 0 < x < 1, got x = " +
                            std::to_string(xf));
  }
  const double cos_theta = cos_contact_angle(contact_angle_deg);
  const double r_m = -2.0 * water.surface_tension_n_per_m *
                     water.molar_volume_m3_per_mol * cos_theta /
                     (constants::kGasConstant * t.kelvin() * std::log(xf));
  return r_m * 1e9;
}

RelHumidity inverse_kelvin(double r_nm, Temperature t,
                           double contact_angle_deg,
                           const WaterProperties& water) {
  if (!std::isfinite(r_nm) || r_nm <= 0.0) {
    throw std::domain_error("pore radius must be positive, got " +
                            std::to_string(r_nm) + " nm");
  }
  const double cos_theta = cos_contact_angle(contact_angle_deg);
  const double x =
      std::exp(-2.0 * water.surface_tension_n_per_m *
               water.molar_volume_m3_per_mol * cos_theta /
               (r_nm * 1e-9 * constants::kGasConstant * t.kelvin()));
  return RelHumidity::from_fraction(x);
}

}  // namespace aaotwin
