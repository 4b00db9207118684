#include "aaotwin/param_keys.hpp"

#include <stdexcept>

namespace aaotwin {

namespace {

std::vector<ParamKey> build_registry() {
  std::vector<ParamKey> reg;
  const auto add = [&reg](std::string key, auto getter, auto setter,
                          double lo, double hi, double scale) {
    reg.push_back(ParamKey{std::move(key), getter, setter, lo, hi, scale});
  };

  add(
      "porosity", [](const SensorParams& p) { return p.dist.porosity; },
      [](SensorParams& p, double v) {
        p.dist.porosity = v;
        p.diel.porosity = v;
      },
      0.02, 0.9, 0.1);
  add(
      "dist.micro.weight",
      [](const SensorParams& p) { return p.dist.modes.at(0).weight; },
      [](SensorParams& p, double v) {
        p.dist.modes.at(0).weight = v;
        p.dist.modes.at(1).weight = 1.0 - v;
      },
      0.02, 0.98, 0.1);
  add(
      "dist.micro.median_nm",
      [](const SensorParams& p) { return p.dist.modes.at(0).median_radius_nm; },
      [](SensorParams& p, double v) {
        p.dist.modes.at(0).median_radius_nm = v;
      },
      0.2, 2.0, 0.5);
  add(
      "dist.micro.sigma_log",
      [](const SensorParams& p) { return p.dist.modes.at(0).sigma_log; },
      [](SensorParams& p, double v) { p.dist.modes.at(0).sigma_log = v; },
      0.05, 1.5, 0.1);
  add(
      "dist.meso.median_nm",
      [](const SensorParams& p) { return p.dist.modes.at(1).median_radius_nm; },
      [](SensorParams& p, double v) {
        p.dist.modes.at(1).median_radius_nm = v;
      },
      1.0, 50.0, 2.0);
  add(
      "dist.meso.sigma_log",
      [](const SensorParams& p) { return p.dist.modes.at(1).sigma_log; },
      [](SensorParams& p, double v) { p.dist.modes.at(1).sigma_log = v; },
      0.05, 1.5, 0.1);
  add(
      "angles.advancing_deg",
      [](const SensorParams& p) { return p.angles.advancing_deg; },
      [](SensorParams& p, double v) { p.angles.advancing_deg = v; }, 0.0,
      89.0, 10.0);
  add(
      "angles.receding_deg",
      [](const SensorParams& p) { return p.angles.receding_deg; },
      [](SensorParams& p, double v) { p.angles.receding_deg = v; }, 0.0,
      89.0, 10.0);
  add(
      "bet.v_m", [](const SensorParams& p) { return p.bet.v_m; },
      [](SensorParams& p, double v) { p.bet.v_m = v; }, 1e-6, 1e6, 1.0);
  add(
      "bet.e1_minus_el_j_per_mol",
      [](const SensorParams& p) { return p.bet.e1_minus_el_j_per_mol; },
      [](SensorParams& p, double v) { p.bet.e1_minus_el_j_per_mol = v; },
      0.0, 40000.0, 2000.0);
  add(
      "bet.t_mono_nm", [](const SensorParams& p) { return p.bet.t_mono_nm; },
      [](SensorParams& p, double v) { p.bet.t_mono_nm = v; }, 0.05, 1.0,
      0.1);
  add(
      "diel.kappa_solid",
      [](const SensorParams& p) { return p.diel.kappa_solid; },
      [](SensorParams& p, double v) { p.diel.kappa_solid = v; }, 1.0, 30.0,
      2.0);
  add(
      "diel.c0_pf", [](const SensorParams& p) { return p.diel.c0_pf; },
      [](SensorParams& p, double v) { p.diel.c0_pf = v; }, 1e-3, 1e6, 100.0);
  add(
      "thermal.widening_alpha",
      [](const SensorParams& p) { return p.thermal.widening_alpha; },
      [](SensorParams& p, double v) { p.thermal.widening_alpha = v; }, 0.0,
      50.0, 1.0);
  add(
      "thermal.widening_e_d_j_per_mol",
      [](const SensorParams& p) {
        return p.thermal.widening_activation_j_per_mol;
      },
      [](SensorParams& p, double v) {
        p.thermal.widening_activation_j_per_mol = v;
      },
      100.0, 40000.0, 1000.0);
  add(
      "thermal.tau_in_s",
      [](const SensorParams& p) { return p.thermal.tau_in_s; },
      [](SensorParams& p, double v) { p.thermal.tau_in_s = v; }, 1e-3, 1e5,
      10.0);
  add(
      "thermal.tau_out_s",
      [](const SensorParams& p) { return p.thermal.tau_out_s; },
      [](SensorParams& p, double v) { p.thermal.tau_out_s = v; }, 1e-3, 1e5,
      10.0);
  add(
      "thermal.time_constant_s",
      [](const SensorParams& p) { return p.thermal.thermal_time_constant_s; },
      [](SensorParams& p, double v) {
        p.thermal.thermal_time_constant_s = v;
      },
      1e-3, 1e4, 1.0);
  for (int i = 0; i < kHeaterSegments; ++i) {
    const std::string base = "thermal.heater." + std::to_string(i + 1);
    add(
        base + ".resistance_ohm",
        [i](const SensorParams& p) {
          return p.thermal.heater.at(i).resistance_ohm;
        },
        [i](SensorParams& p, double v) {
          p.thermal.heater.at(i).resistance_ohm = v;
        },
        1.0, 1e5, 100.0);
    add(
        base + ".thermal_resistance_k_per_w",
        [i](const SensorParams& p) {
          return p.thermal.heater.at(i).thermal_resistance_k_per_w;
        },
        [i](SensorParams& p, double v) {
          p.thermal.heater.at(i).thermal_resistance_k_per_w = v;
        },
        1e-2, 1e4, 10.0);
    add(
        base + ".max_power_w",
        [i](const SensorParams& p) {
          return p.thermal.heater.at(i).max_power_w;
        },
        [i](SensorParams& p, double v) {
          p.thermal.heater.at(i).max_power_w = v;
        },
        0.0, 100.0, 0.1);
  }
  add(
      "drift.rate_per_s",
      [](const SensorParams& p) { return p.drift.rate_per_s; },
      [](SensorParams& p, double v) { p.drift.rate_per_s = v; }, 0.0, 1.0,
      1e-6);
  add(
      "drift.max_offset_pf",
      [](const SensorParams& p) { return p.drift.max_offset_pf; },
      [](SensorParams& p, double v) { p.drift.max_offset_pf = v; }, 0.0,
      1e4, 10.0);
  add(
      "drift.bake_temp_c",
      [](const SensorParams& p) { return p.drift.bake_temp_c; },
      [](SensorParams& p, double v) { p.drift.bake_temp_c = v; }, 40.0,
      400.0, 10.0);
  add(
      "drift.bake_time_s",
      [](const SensorParams& p) { return p.drift.bake_time_s; },
      [](SensorParams& p, double v) { p.drift.bake_time_s = v; }, 1.0, 1e6,
      100.0);
  return reg;
}

}  // namespace

const std::vector<ParamKey>& param_registry() {
  static const std::vector<ParamKey> reg = build_registry();
  return reg;
}

const ParamKey* find_param_key(const std::string& key) {
  for (const ParamKey& pk : param_registry()) {
    if (pk.key == key) return &pk;
  }
  return nullptr;
}

void set_param(SensorParams& params, const std::string& key, double value) {
  const ParamKey* pk = find_param_key(key);
  if (pk == nullptr) {
    throw std::invalid_argument("unknown parameter key '" + key + "'");
  }
  pk->set(params, value);
}

double get_param(const SensorParams& params, const std::string& key) {
  const ParamKey* pk = find_param_key(key);
  if (pk == nullptr) {
    throw std::invalid_argument("unknown parameter key '" + key + "'");
  }
  return pk->get(params);
}

std::vector<std::pair<std::string, double>> all_params(
    const SensorParams& params) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(param_registry().size());
  for (const ParamKey& pk : param_registry()) {
    out.emplace_back(pk.key, pk.get(params));
  }
  return out;
}

}  // namespace aaotwin
