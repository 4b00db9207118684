#pragma once

namespace aaotwin {

namespace constants {
inline constexpr double kGasConstant = 8.314462618;  // J/(mol K)
inline constexpr double kKappaWater = 80.0;          // relative permittivity of liquid water
inline constexpr double kKappaAir = 1.0;
inline constexpr double kCelsiusOffsetK = 273.15;
}  // namespace constants

// Relative humidity as the saturation ratio p/p0. The fraction is the
// canonical value used by all physics; a percent constructed at the I/O
// boundary is preserved bit-exactly so percent -> fraction -> percent
// round trips without rounding drift.
class RelHumidity {
 public:
  RelHumidity() = default;  // dry
  static RelHumidity from_fraction(double x);
  static RelHumidity from_percent(double p);
  double fraction() const { return x_; }
  double percent() const { return has_percent_ ? percent_ : x_ * 100.0; }

 private:
  double x_ = 0.0;
  double percent_ = 0.0;
  bool has_percent_ = false;
};

class Temperature {
 public:
  static Temperature from_kelvin(double k);
  static Temperature from_celsius(double c);
  double kelvin() const { return k_; }
  double celsius() const;

 private:
  explicit Temperature(double k) : k_(k) {}
  double k_;
};

class Capacitance {
 public:
  Capacitance() = default;  // 0 pF
  static Capacitance from_pf(double pf);
  double pf() const { return pf_; }

 private:
  double pf_ = 0.0;
};

struct WaterProperties {
  double surface_tension_n_per_m;
  double molar_volume_m3_per_mol;
};

// Bulk-water properties of the condensate. Valid between the freezing and
// boiling points at ambient pressure; anything else is rejected.
WaterProperties water_properties(Temperature t);

}  // namespace aaotwin
