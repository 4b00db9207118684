#include "aaotwin/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>

#include "aaotwin/hysteresis.hpp"
#include "aaotwin/param_keys.hpp"

namespace aaotwin {

namespace {

struct SaltRow {
  bool has_rh = false;
  bool has_c = false;
  double rh_percent = 0.0;
  double capacitance_pf = 0.0;
};

double parse_config_number(const ConfigEntry& entry) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(entry.value, &consumed);
    if (consumed != entry.value.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("[" + entry.section + "] " + entry.key +
                                ": '" + entry.value + "' is not a number");
  }
}

// Keys worth keeping when the dataset is too small for the requested mask,
// most identifiable first: overall scale, then pore volume, then adsorption
// strength, then the remaining shape parameters.
const char* const kMaskPriority[] = {
    "diel.c0_pf",
    "porosity",
    "bet.e1_minus_el_j_per_mol",
    "diel.kappa_solid",
    "dist.micro.median_nm",
    "dist.meso.median_nm",
    "angles.advancing_deg",
    "angles.receding_deg",
};

std::size_t mask_priority(const std::string& key) {
  for (std::size_t i = 0; i < std::size(kMaskPriority); ++i) {
    if (key == kMaskPriority[i]) return i;
  }
  return std::size(kMaskPriority);
}

double branch_model_pf(const SensorParams& params,
                       const CalibrationPoint& point) {
  HysteresisState h = HysteresisState::baked();
  if (point.branch == Branch::descending) {
    h = update(h, RelHumidity::from_fraction(1.0));
  }
  h = update(h, point.x);
  return pipeline_reading(h, params, point.temp).pf();
}

}  // namespace

CalibrationDataset load_fixed_points(const ConfigFile& config) {
  CalibrationDataset dataset;
  std::vector<std::string> order;
  std::map<std::string, SaltRow> salts;
  std::string open_section;
  for (const ConfigEntry& entry : config.entries) {
    if (entry.section.rfind("salt.", 0) != 0 ||
        entry.section.size() <= 5) {
      throw std::invalid_argument(
          "salt config: expected [salt.<name>] sections, found key '" +
          entry.dotted_key() + "'");
    }
    const std::string name = entry.section.substr(5);
    if (entry.section != open_section) {
      if (salts.count(name) != 0) {
        throw std::invalid_argument("duplicate salt name '" + name + "'");
      }
      salts.emplace(name, SaltRow{});
      order.push_back(name);
      open_section = entry.section;
    }
    SaltRow& row = salts.at(name);
    if (entry.key == "rh_percent") {
      if (row.has_rh) {
        throw std::invalid_argument("[salt." + name +
                                    "]: duplicate key 'rh_percent'");
      }
      row.rh_percent = parse_config_number(entry);
      row.has_rh = true;
    } else if (entry.key == "capacitance_pf") {
      if (row.has_c) {
        throw std::invalid_argument("[salt." + name +
                                    "]: duplicate key 'capacitance_pf'");
      }
      row.capacitance_pf = parse_config_number(entry);
      row.has_c = true;
    } else {
      throw std::invalid_argument("[salt." + name + "]: unknown key '" +
                                  entry.key + "'");
    }
  }
  for (const std::string& name : order) {
    const SaltRow& row = salts.at(name);
    if (!row.has_rh || !row.has_c) {
      throw std::invalid_argument("[salt." + name +
                                  "]: needs both rh_percent and "
                                  "capacitance_pf");
    }
    if (!(row.rh_percent > 0.0 && row.rh_percent < 100.0)) {
      throw std::invalid_argument("salt '" + name +
                                  "': rh_percent must lie inside (0, 100)");
    }
    CalibrationPoint point;
    point.x = RelHumidity::from_percent(row.rh_percent);
    point.c = Capacitance::from_pf(row.capacitance_pf);
    point.branch = Branch::unknown;
    point.temp = Temperature::from_celsius(25.0);
    dataset.points.push_back(point);
  }
  return dataset;
}

CalibrationResult calibrate_sensor(const CalibrationDataset& data,
                                   const SensorParams& init,
                                   const std::vector<std::string>& free_keys) {
  init.validate();
  const std::size_t n = data.points.size();
  if (n == 0) {
    throw std::invalid_argument("calibration dataset is empty");
  }
  {
    std::string offending;
    for (std::size_t i = 0; i < n; ++i) {
      const CalibrationPoint& p = data.points[i];
      if (p.branch == Branch::unknown && p.x.fraction() > 0.5) {
        if (!offending.empty()) offending += ", ";
        offending += std::to_string(i + 1);
      }
    }
    if (!offending.empty()) {
      throw std::invalid_argument(
          "branch labels are required above 50% RH; unlabeled rows: " +
          offending);
    }
  }

  if (free_keys.empty()) {
    throw std::invalid_argument("at least one free parameter is required");
  }
  for (std::size_t i = 0; i < free_keys.size(); ++i) {
    if (find_param_key(free_keys[i]) == nullptr) {
      throw std::invalid_argument("unknown parameter key '" + free_keys[i] +
                                  "'");
    }
    for (std::size_t j = i + 1; j < free_keys.size(); ++j) {
      if (free_keys[i] == free_keys[j]) {
        throw std::invalid_argument("duplicate free parameter '" +
                                    free_keys[i] + "'");
      }
    }
  }

  // Two data points are reserved as slack so every retained parameter has
  // leverage; requesting more frees than that trims the mask with warnings
  // instead of failing.
  CalibrationResult result;
  std::vector<std::string> kept(free_keys);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const std::string& a, const std::string& b) {
                     return mask_priority(a) < mask_priority(b);
                   });
  const std::size_t cap = std::max<std::size_t>(1, n >= 2 ? n - 2 : 1);
  while (kept.size() > cap) {
    result.warnings.push_back("dropping '" + kept.back() +
                              "': unidentifiable from " + std::to_string(n) +
                              " calibration points");
    kept.pop_back();
  }

  // The receding angle is fitted as delta = ln(advancing - receding) so the
  // ordering survives every trial step.
  const bool fit_receding =
      std::find(kept.begin(), kept.end(), "angles.receding_deg") != kept.end();

  FitProblem problem;
  for (const std::string& key : kept) {
    const ParamKey& pk = *find_param_key(key);
    if (key == "angles.receding_deg") {
      const double gap =
          std::max(init.angles.advancing_deg - init.angles.receding_deg, 1e-8);
      problem.initial.push_back(std::log(gap));
      problem.lower.push_back(-20.0);
      problem.upper.push_back(std::log(89.0));
      problem.scale.push_back(1.0);
    } else {
      problem.initial.push_back(pk.get(init));
      problem.lower.push_back(pk.fit_lower);
      problem.upper.push_back(pk.fit_upper);
      problem.scale.push_back(pk.fit_scale);
    }
  }

  const auto apply = [&kept, &init, fit_receding](
                         const std::vector<double>& theta) {
    SensorParams p = init;
    double delta = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (kept[i] == "angles.receding_deg") {
        delta = theta[i];
      } else {
        find_param_key(kept[i])->set(p, theta[i]);
      }
    }
    if (fit_receding) {
      p.angles.receding_deg =
          std::max(p.angles.advancing_deg - std::exp(delta), 0.0);
    }
    return p;
  };

  problem.residual = [&data, &apply](const std::vector<double>& theta) {
    const SensorParams p = apply(theta);
    std::vector<double> r;
    r.reserve(data.points.size());
    for (const CalibrationPoint& point : data.points) {
      r.push_back(branch_model_pf(p, point) - point.c.pf());
    }
    return r;
  };

  result.report = least_squares(problem);
  result.params = apply(result.report.params);
  result.params.validate();
  return result;
}

}  // namespace aaotwin
