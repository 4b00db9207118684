#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aaotwin/dielectric.hpp"
#include "aaotwin/hysteresis.hpp"

namespace aaotwin {

struct HeaterSegment {
  double resistance_ohm = 180.0;
  double thermal_resistance_k_per_w = 80.0;
  double max_power_w = 0.125;
};

inline constexpr int kHeaterSegments = 8;

// Slow-state couplings of the physical element: wall-moisture pore widening
// (alpha, activation energy, asymmetric in/out lags), the element's thermal
// lag, and the segmented heater.
struct ThermalParams {
  double widening_alpha = 2.0;
  double widening_activation_j_per_mol = 2500.0;
  double tau_in_s = 40.0;
  double tau_out_s = 8.0;
  double thermal_time_constant_s = 5.0;
  std::array<HeaterSegment, kHeaterSegments> heater{};
};

struct DriftParams {
  double rate_per_s = 5e-7;       // chemisorption rate constant k_d
  double max_offset_pf = 25.0;    // reading offset when fully drifted
  double bake_temp_c = 100.0;     // at or above this the surface recovers
  double bake_time_s = 600.0;     // recovery time constant is bake_time / 5
};

struct SensorParams {
  PoreDistribution dist = default_alumina_distribution();
  ContactAngles angles{};
  BetParams bet{};
  DielectricParams diel{};
  ThermalParams thermal{};
  DriftParams drift{};

  static SensorParams defaults();
  void validate() const;
};

struct TwinState {
  HysteresisState hysteresis;
  double drift_level = 0.0;      // D in [0, 1]
  double element_temp_k = 298.15;
  double diffusion_state = 0.0;  // s in [0, 1], wall moisture
  double clock_s = 0.0;

  static TwinState baked(Temperature ambient);
};

struct AmbientSample {
  RelHumidity x;
  Temperature temp;
};

// Quasi-static reading for a given memory state: flooding plus film through
// the mixing rule, no slow states. Used by the readout inverse and by the
// calibration model.
Capacitance pipeline_reading(const HysteresisState& state,
                             const SensorParams& params, Temperature t);

ResponseCurve branch_capacitance(const SensorParams& params, Temperature t,
                                 BranchDirection direction, int samples);

// Advances the twin by dt under the given ambient and heater powers (W per
// segment, missing entries are off) and returns the new state with the
// instrument reading, which includes the drift offset.
std::pair<TwinState, Capacitance> step(const TwinState& state,
                                       const AmbientSample& ambient,
                                       std::span<const double> heater_power_w,
                                       double dt_s,
                                       const SensorParams& params);

struct TraceRow {
  double t_s = 0.0;
  RelHumidity x;
  Temperature temp = Temperature::from_celsius(25.0);
  std::array<double, kHeaterSegments> power_w{};
};

struct TraceReading {
  double t_s;
  Capacitance c;
};

// Steps through an environment trace row by row; dt comes from consecutive
// timestamps, which must be strictly increasing. The first row is observed
// with no elapsed time.
std::vector<TraceReading> simulate_trace(const std::vector<TraceRow>& rows,
                                         const SensorParams& params,
                                         TwinState initial);

std::vector<TraceReading> simulate_trace(const std::vector<TraceRow>& rows,
                                         const SensorParams& params);

// Raised when a reading lies outside the calibrated span; carries the
// humidity endpoint the reading was clamped to.
class ReadoutRangeError : public std::out_of_range {
 public:
  ReadoutRangeError(const std::string& what, RelHumidity clamped)
      : std::out_of_range(what), clamped_(clamped) {}
  RelHumidity clamped() const { return clamped_; }

 private:
  RelHumidity clamped_;
};

// Humidity that reproduces a capacitance reading on the branch implied by
// the hinted memory state, by bisection on the monotone quasi-static curve.
RelHumidity invert_reading(Capacitance reading, Temperature t,
                           const HysteresisState& state_hint,
                           const SensorParams& params);

// Mean slope of a response curve between two humidities, in pF per %RH.
double average_sensitivity(const ResponseCurve& curve, RelHumidity lo,
                           RelHumidity hi);

}  // namespace aaotwin
