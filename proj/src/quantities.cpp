#include "aaotwin/quantities.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aaotwin {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

RelHumidity RelHumidity::from_fraction(double x) {
  require_finite(x, "relative humidity fraction");
  if (x < 0.0 || x > 1.0) {
    throw std::out_of_range("relative humidity fraction " + std::to_string(x) +
                            " outside [0, 1]");
  }
  RelHumidity rh;
  rh.x_ = x;
  return rh;
}

RelHumidity RelHumidity::from_percent(double p) {
  require_finite(p, "relative humidity percent");
  if (p < 0.0 || p > 100.0) {
    throw std::out_of_range("relative humidity percent " + std::to_string(p) +
                            " outside [0, 100]");
  }
  RelHumidity rh;
  rh.x_ = p / 100.0;
  rh.percent_ = p;
  rh.has_percent_ = true;
  return rh;
}

Temperature Temperature::from_kelvin(double k) {
  require_finite(k, "temperature");
  if (k <= 0.0) {
    throw std::out_of_range("temperature " + std::to_string(k) +
                            " K must be positive");
  }
  return Temperature(k);
}

Temperature Temperature::from_celsius(double c) {
  return from_kelvin(c + constants::kCelsiusOffsetK);
}

double Temperature::celsius() const { return k_ - constants::kCelsiusOffsetK; }

Capacitance Capacitance::from_pf(double pf) {
  require_finite(pf, "capacitance");
  if (pf < 0.0) {
    throw std::out_of_range("capacitance " + std::to_string(pf) +
                            " pF must be non-negative");
  }
  Capacitance c;
  c.pf_ = pf;
  return c;
}

WaterProperties water_properties(Temperature t) {
  const double k = t.kelvin();
  if (k < 273.15 || k > 373.15) {
    throw std::out_of_range(
        "water properties requested at " + std::to_string(k) +
        " K; valid range is 273.15 K to 373.15 K (0 to 100 C)");
  }
  const double t_c = t.celsius();
  // Linear fit to the surface tension of water against air, in N/m.
  const double gamma = (75.64 - 0.1414 * t_c) * 1e-3;
  return WaterProperties{gamma, 1.805e-5};
}

}  // namespace aaotwin
