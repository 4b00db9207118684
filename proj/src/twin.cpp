#include "aaotwin/twin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aaotwin {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

double relax(double value, double target, double dt, double tau) {
  // Exact solution of the first-order lag over one step.
  return target + (value - target) * std::exp(-dt / tau);
}

double widening_equilibrium(double x, double element_temp_k,
                            const ThermalParams& p) {
  return x * (1.0 - std::exp(-p.widening_activation_j_per_mol /
                             (constants::kGasConstant * element_temp_k)));
}

// The wetting correlations stop at the freezing and boiling points, but a
// full-power bake legitimately drives the element past 100 C. A baking
// element is drier than any in-range state, so the sorption physics
// saturate at the nearest endpoint while the raw element temperature keeps
// driving the thermal and drift dynamics.
Temperature sorption_temperature(double element_temp_k) {
  return Temperature::from_kelvin(
      std::clamp(element_temp_k, constants::kCelsiusOffsetK,
                 constants::kCelsiusOffsetK + 100.0));
}

}  // namespace

SensorParams SensorParams::defaults() { return SensorParams{}; }

void SensorParams::validate() const {
  make_pore_distribution(dist.modes, dist.porosity);
  make_contact_angles(angles.advancing_deg, angles.receding_deg);
  require(std::isfinite(bet.v_m) && bet.v_m > 0.0,
          "monolayer amount must be positive");
  require(std::isfinite(bet.e1_minus_el_j_per_mol),
          "E1 - EL must be finite");
  require(std::isfinite(bet.t_mono_nm) && bet.t_mono_nm > 0.0,
          "monolayer thickness must be positive");
  require(diel.porosity == dist.porosity,
          "dielectric porosity must match the pore distribution");
  effective_permittivity(FilledFraction{0.0, 0.0}, diel);
  require(std::isfinite(thermal.widening_alpha) &&
              thermal.widening_alpha >= 0.0,
          "widening gain must be non-negative");
  require(std::isfinite(thermal.widening_activation_j_per_mol) &&
              thermal.widening_activation_j_per_mol > 0.0,
          "widening activation energy must be positive");
  require(thermal.tau_in_s > 0.0 && thermal.tau_out_s > 0.0,
          "diffusion lags must be positive");
  require(thermal.thermal_time_constant_s > 0.0,
          "thermal time constant must be positive");
  for (const HeaterSegment& seg : thermal.heater) {
    require(std::isfinite(seg.resistance_ohm) && seg.resistance_ohm > 0.0,
            "heater resistance must be positive");
    require(std::isfinite(seg.thermal_resistance_k_per_w) &&
                seg.thermal_resistance_k_per_w > 0.0,
            "heater thermal resistance must be positive");
    require(std::isfinite(seg.max_power_w) && seg.max_power_w >= 0.0,
            "heater power rating must be non-negative");
  }
  require(std::isfinite(drift.rate_per_s) && drift.rate_per_s >= 0.0,
          "drift rate must be non-negative");
  require(std::isfinite(drift.max_offset_pf) && drift.max_offset_pf >= 0.0,
          "drift offset ceiling must be non-negative");
  require(std::isfinite(drift.bake_temp_c), "bake temperature must be finite");
  require(std::isfinite(drift.bake_time_s) && drift.bake_time_s > 0.0,
          "bake time must be positive");
}

TwinState TwinState::baked(Temperature ambient) {
  TwinState s;
  s.hysteresis = HysteresisState::baked();
  s.drift_level = 0.0;
  s.element_temp_k = ambient.kelvin();
  s.diffusion_state = 0.0;
  s.clock_s = 0.0;
  return s;
}

Capacitance pipeline_reading(const HysteresisState& state,
                             const SensorParams& params, Temperature t) {
  const FilledFraction fill =
      filled_fraction(state, params.dist, params.angles, params.bet, t);
  return capacitance(effective_permittivity(fill, params.diel), params.diel);
}

ResponseCurve branch_capacitance(const SensorParams& params, Temperature t,
                                 BranchDirection direction, int samples) {
  const std::vector<BranchPoint> branch = branch_curve(
      params.dist, params.angles, params.bet, t, direction, samples);
  ResponseCurve out;
  out.branch = direction == BranchDirection::ascending ? Branch::ascending
                                                       : Branch::descending;
  out.points.reserve(branch.size());
  for (const BranchPoint& bp : branch) {
    out.points.push_back(
        {bp.x, capacitance(effective_permittivity(bp.fill, params.diel),
                           params.diel)});
  }
  return out;
}

std::pair<TwinState, Capacitance> step(const TwinState& state,
                                       const AmbientSample& ambient,
                                       std::span<const double> heater_power_w,
                                       double dt_s,
                                       const SensorParams& params) {
  require(std::isfinite(dt_s) && dt_s > 0.0, "time step must be positive");
  require(heater_power_w.size() <= kHeaterSegments,
          "more heater powers than segments");

  TwinState next = state;
  const ThermalParams& th = params.thermal;

  // Element temperature chases ambient plus the heater rise.
  double rise = 0.0;
  for (size_t i = 0; i < heater_power_w.size(); ++i) {
    const double p = heater_power_w[i];
    require(std::isfinite(p) && p >= 0.0, "heater power must be >= 0");
    rise += p * th.heater[i].thermal_resistance_k_per_w;
  }
  const double temp_target = ambient.temp.kelvin() + rise;
  next.element_temp_k = relax(state.element_temp_k, temp_target, dt_s,
                              th.thermal_time_constant_s);

  // Wall moisture relaxes toward its equilibrium, slower in than out.
  const double x = ambient.x.fraction();
  const double s_eq = widening_equilibrium(x, next.element_temp_k, th);
  const double tau = s_eq > state.diffusion_state ? th.tau_in_s : th.tau_out_s;
  next.diffusion_state =
      std::clamp(relax(state.diffusion_state, s_eq, dt_s, tau), 0.0, 1.0);

  // Swollen walls shift the flooding thresholds before the memory update.
  const double radius_scale = 1.0 + th.widening_alpha * next.diffusion_state;
  const Temperature element_t = sorption_temperature(next.element_temp_k);
  next.hysteresis = update(state.hysteresis, ambient.x);

  // Chemisorbed drift accumulates below the bake temperature and anneals
  // away above it.
  const DriftParams& dr = params.drift;
  if (next.element_temp_k - constants::kCelsiusOffsetK < dr.bake_temp_c) {
    next.drift_level =
        1.0 - (1.0 - state.drift_level) *
                  std::exp(-dr.rate_per_s * x * dt_s);
  } else {
    next.drift_level =
        state.drift_level * std::exp(-dt_s * 5.0 / dr.bake_time_s);
  }
  next.clock_s = state.clock_s + dt_s;

  const FilledFraction fill =
      filled_fraction(next.hysteresis, params.dist, params.angles, params.bet,
                      element_t, radius_scale);
  const double c_pf =
      capacitance(effective_permittivity(fill, params.diel), params.diel)
          .pf() +
      next.drift_level * dr.max_offset_pf;
  return {next, Capacitance::from_pf(c_pf)};
}

std::vector<TraceReading> simulate_trace(const std::vector<TraceRow>& rows,
                                         const SensorParams& params,
                                         TwinState initial) {
  std::vector<TraceReading> out;
  out.reserve(rows.size());
  TwinState state = initial;
  bool first = true;
  double prev_t = 0.0;
  size_t row_no = 0;
  for (const TraceRow& row : rows) {
    ++row_no;
    if (!std::isfinite(row.t_s)) {
      throw std::invalid_argument("trace row " + std::to_string(row_no) +
                                  ": timestamp must be finite");
    }
    if (first) {
      // No elapsed time yet: record the humidity and read out.
      state.hysteresis = update(state.hysteresis, row.x);
      state.clock_s = row.t_s;
      const double radius_scale =
          1.0 + params.thermal.widening_alpha * state.diffusion_state;
      const FilledFraction fill = filled_fraction(
          state.hysteresis, params.dist, params.angles, params.bet,
          sorption_temperature(state.element_temp_k), radius_scale);
      const double c_pf =
          capacitance(effective_permittivity(fill, params.diel), params.diel)
              .pf() +
          state.drift_level * params.drift.max_offset_pf;
      out.push_back({row.t_s, Capacitance::from_pf(c_pf)});
      first = false;
    } else {
      if (!(row.t_s > prev_t)) {
        throw std::invalid_argument(
            "trace row " + std::to_string(row_no) +
            ": timestamps must be strictly increasing (" +
            std::to_string(row.t_s) + " after " + std::to_string(prev_t) +
            ")");
      }
      auto [next, reading] =
          step(state, AmbientSample{row.x, row.temp},
               std::span<const double>(row.power_w.data(), row.power_w.size()),
               row.t_s - prev_t, params);
      state = next;
      out.push_back({row.t_s, reading});
    }
    prev_t = row.t_s;
  }
  return out;
}

std::vector<TraceReading> simulate_trace(const std::vector<TraceRow>& rows,
                                         const SensorParams& params) {
  const Temperature ambient0 =
      rows.empty() ? Temperature::from_celsius(25.0) : rows.front().temp;
  return simulate_trace(rows, params, TwinState::baked(ambient0));
}

RelHumidity invert_reading(Capacitance reading, Temperature t,
                           const HysteresisState& state_hint,
                           const SensorParams& params) {
  const auto model = [&](double x) {
    return pipeline_reading(
               update(state_hint, RelHumidity::from_fraction(x)), params, t)
        .pf();
  };
  constexpr double kMatchTolPf = 1e-3;
  const double target = reading.pf();
  const double c_lo = model(0.0);
  const double c_hi = model(1.0);
  if (target < c_lo - kMatchTolPf) {
    throw ReadoutRangeError(
        "reading " + std::to_string(target) + " pF below the dry-end " +
            std::to_string(c_lo) + " pF; clamped to 0% RH",
        RelHumidity::from_fraction(0.0));
  }
  if (target > c_hi + kMatchTolPf) {
    throw ReadoutRangeError(
        "reading " + std::to_string(target) + " pF above the saturated " +
            std::to_string(c_hi) + " pF; clamped to 100% RH",
        RelHumidity::from_fraction(1.0));
  }
  if (target <= c_lo) return RelHumidity::from_fraction(0.0);
  if (target >= c_hi) return RelHumidity::from_fraction(1.0);

  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (model(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Ties resolve toward the lower humidity.
  const double x_hat = std::abs(model(lo) - target) <= kMatchTolPf ? lo : hi;
  return RelHumidity::from_fraction(x_hat);
}

double average_sensitivity(const ResponseCurve& curve, RelHumidity lo,
                           RelHumidity hi) {
  const double a = lo.fraction();
  const double b = hi.fraction();
  if (!(a < b)) {
    throw std::invalid_argument(
        "sensitivity range must have lo < hi");
  }
  if (curve.points.size() < 2) {
    throw std::invalid_argument("response curve needs at least 2 points");
  }
  if (a < curve.points.front().x || b > curve.points.back().x) {
    throw std::out_of_range("sensitivity range extends beyond the curve");
  }
  const auto interp = [&](double x) {
    auto it = std::lower_bound(
        curve.points.begin(), curve.points.end(), x,
        [](const ResponsePoint& p, double v) { return p.x < v; });
    if (it == curve.points.begin()) return it->c.pf();
    if (it == curve.points.end()) return std::prev(it)->c.pf();
    const ResponsePoint& b1 = *it;
    const ResponsePoint& a1 = *std::prev(it);
    if (b1.x == a1.x) return a1.c.pf();
    const double f = (x - a1.x) / (b1.x - a1.x);
    return a1.c.pf() + f * (b1.c.pf() - a1.c.pf());
  };
  return (interp(b) - interp(a)) / (100.0 * (b - a));
}

}  // namespace aaotwin
