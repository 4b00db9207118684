#include "aaotwin/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aaotwin/calibration.hpp"
#include "aaotwin/dielectric.hpp"
#include "aaotwin/hysteresis.hpp"
#include "aaotwin/io.hpp"
#include "aaotwin/param_keys.hpp"
#include "aaotwin/pore_structure.hpp"

namespace aaotwin {

namespace {

double parse_number_strict(const std::string& text,
                           const std::string& context) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": '" + text + "' is not a number");
  }
}

// Routes primary output to --out when given, else the fallback stream.
class OutputTarget {
 public:
  OutputTarget(const CommonOptions& common, std::ostream& fallback)
      : path_(common.out_path) {
    if (path_.empty()) {
      dest_ = &fallback;
    } else {
      file_.open(path_);
      if (!file_) {
        throw std::runtime_error("cannot open '" + path_ + "' for writing");
      }
      dest_ = &file_;
    }
  }

  std::ostream& stream() { return *dest_; }

  void finish() {
    dest_->flush();
    if (!path_.empty() && !file_) {
      throw std::runtime_error("failed while writing '" + path_ + "'");
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* dest_ = nullptr;
};

std::vector<TraceRow> parse_trace_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  const std::size_t col_t = column_index(table, "t_s", path);
  const std::size_t col_x = column_index(table, "rh_percent", path);
  const std::size_t col_temp = column_index(table, "temp_c", path);
  std::array<std::size_t, kHeaterSegments> col_p{};
  for (int k = 0; k < kHeaterSegments; ++k) {
    col_p[k] = find_column(table, "p" + std::to_string(k + 1) + "_w");
  }
  std::vector<TraceRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::vector<std::string>& cells = table.rows[i];
    TraceRow row;
    row.t_s = parse_cell(cells[col_t], path, i + 1);
    const double rh = parse_cell(cells[col_x], path, i + 1);
    const double temp_c = parse_cell(cells[col_temp], path, i + 1);
    try {
      row.x = RelHumidity::from_percent(rh);
      row.temp = Temperature::from_celsius(temp_c);
      for (int k = 0; k < kHeaterSegments; ++k) {
        if (col_p[k] == kNoColumn) continue;
        const double p = parse_cell(cells[col_p[k]], path, i + 1);
        if (!(p >= 0.0)) {
          throw std::invalid_argument("heater power must be >= 0");
        }
        row.power_w[k] = p;
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument(path + " row " + std::to_string(i + 1) +
                                  ": " + e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

CalibrationDataset parse_calibration_csv(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  const std::size_t col_x = column_index(table, "rh_percent", path);
  const std::size_t col_c = column_index(table, "capacitance_pf", path);
  const std::size_t col_b = column_index(table, "branch", path);
  const std::size_t col_t = column_index(table, "temp_c", path);
  CalibrationDataset dataset;
  dataset.source = path;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::vector<std::string>& cells = table.rows[i];
    CalibrationPoint point;
    const double rh = parse_cell(cells[col_x], path, i + 1);
    const double c_pf = parse_cell(cells[col_c], path, i + 1);
    const double temp_c = parse_cell(cells[col_t], path, i + 1);
    const std::string& branch = cells[col_b];
    if (branch == "asc") {
      point.branch = Branch::ascending;
    } else if (branch == "desc") {
      point.branch = Branch::descending;
    } else if (branch == "unk") {
      point.branch = Branch::unknown;
    } else {
      throw std::invalid_argument(path + " row " + std::to_string(i + 1) +
                                  ": branch must be asc, desc, or unk, got '" +
                                  branch + "'");
    }
    try {
      point.x = RelHumidity::from_percent(rh);
      point.c = Capacitance::from_pf(c_pf);
      point.temp = Temperature::from_celsius(temp_c);
    } catch (const std::exception& e) {
      throw std::invalid_argument(path + " row " + std::to_string(i + 1) +
                                  ": " + e.what());
    }
    dataset.points.push_back(point);
  }
  return dataset;
}

// Keys the calibrate command frees when none are requested.
const std::vector<std::string> kStandardMask = {
    "diel.c0_pf",
    "porosity",
    "diel.kappa_solid",
    "bet.e1_minus_el_j_per_mol",
    "dist.micro.median_nm",
    "dist.meso.median_nm",
    "angles.advancing_deg",
    "angles.receding_deg",
};

std::string format_g3(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

}  // namespace

SensorParams resolve_params(const CommonOptions& options) {
  SensorParams params = SensorParams::defaults();
  if (!options.config_path.empty()) {
    const ConfigFile config = read_config_file(options.config_path);
    for (const ConfigEntry& entry : config.entries) {
      const std::string key = entry.dotted_key();
      set_param(params, key,
                parse_number_strict(entry.value,
                                    options.config_path + ": " + key));
    }
  }
  for (const std::string& assignment : options.overrides) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("--set expects key=value, got '" +
                                  assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    set_param(params, key,
              parse_number_strict(assignment.substr(eq + 1), "--set " + key));
  }
  params.validate();
  return params;
}

int cmd_loop(const LoopOptions& options, std::ostream& out,
             std::ostream& err) {
  try {
    if (options.samples < 2) {
      throw std::invalid_argument("at least 2 samples are required");
    }
    const SensorParams params = resolve_params(options.common);
    const Temperature t = Temperature::from_celsius(options.temp_c);
    const ResponseCurve asc =
        branch_capacitance(params, t, BranchDirection::ascending,
                           options.samples);
    const ResponseCurve desc =
        branch_capacitance(params, t, BranchDirection::descending,
                           options.samples);
    std::vector<std::vector<double>> rows;
    rows.reserve(asc.points.size());
    for (std::size_t i = 0; i < asc.points.size(); ++i) {
      rows.push_back({asc.points[i].x * 100.0, asc.points[i].c.pf(),
                      desc.points[i].c.pf()});
    }
    OutputTarget target(options.common, out);
    write_csv(target.stream(), {"rh_percent", "c_asc_pf", "c_desc_pf"}, rows);
    target.finish();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err) {
  try {
    const SensorParams params = resolve_params(options.common);
    const std::vector<TraceRow> rows = parse_trace_csv(options.trace_path);
    const std::vector<TraceReading> readings = simulate_trace(rows, params);
    std::vector<std::vector<double>> csv_rows;
    csv_rows.reserve(readings.size());
    for (const TraceReading& r : readings) {
      csv_rows.push_back({r.t_s, r.c.pf()});
    }
    OutputTarget target(options.common, out);
    write_csv(target.stream(), {"t_s", "capacitance_pf"}, csv_rows);
    target.finish();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_calibrate(const CalibrateOptions& options, std::ostream& out,
                  std::ostream& err) {
  try {
    std::vector<std::string> mask = options.free_keys;
    if (mask.empty() && !options.clear_mask) mask = kStandardMask;
    if (mask.empty()) {
      throw std::invalid_argument("at least one free parameter is required");
    }
    if (!options.data_path.empty() && !options.salts_path.empty()) {
      throw std::invalid_argument(
          "give either a calibration CSV or --salts, not both");
    }
    if (options.data_path.empty() && options.salts_path.empty()) {
      throw std::invalid_argument(
          "a calibration CSV or --salts file is required");
    }
    const SensorParams init = resolve_params(options.common);
    CalibrationDataset dataset;
    if (!options.salts_path.empty()) {
      dataset = load_fixed_points(read_config_file(options.salts_path));
      dataset.source = options.salts_path;
    } else {
      dataset = parse_calibration_csv(options.data_path);
    }

    const CalibrationResult result = calibrate_sensor(dataset, init, mask);

    {
      std::ofstream pf(options.params_out);
      if (!pf) {
        throw std::runtime_error("cannot open '" + options.params_out +
                                 "' for writing");
      }
      for (const auto& [key, value] : all_params(result.params)) {
        pf << key << " = " << format_exact(value) << "\n";
      }
      pf.flush();
      if (!pf) {
        throw std::runtime_error("failed while writing '" +
                                 options.params_out + "'");
      }
    }

    const ResponseCurve curve =
        branch_capacitance(result.params, Temperature::from_celsius(25.0),
                           BranchDirection::ascending, 201);
    const double sensitivity =
        average_sensitivity(curve, RelHumidity::from_percent(20.0),
                            RelHumidity::from_percent(90.0));

    OutputTarget target(options.common, out);
    std::ostream& rep = target.stream();
    rep << "calibration report\n";
    rep << "source = " << dataset.source << "\n";
    rep << "data_points = " << dataset.points.size() << "\n";
    rep << "converged = " << (result.report.converged ? "yes" : "no") << "\n";
    rep << "iterations = " << result.report.iterations << "\n";
    rep << "residual_norm_pf = " << format_g9(result.report.residual_norm)
        << "\n";
    rep << "message = " << result.report.message << "\n";
    for (const std::string& warning : result.warnings) {
      rep << "warning: " << warning << "\n";
    }
    rep << "fitted parameters:\n";
    for (const std::string& key : mask) {
      bool dropped = false;
      for (const std::string& warning : result.warnings) {
        if (warning.find("'" + key + "'") != std::string::npos) {
          dropped = true;
        }
      }
      if (dropped) continue;
      rep << "  " << key << " = " << format_g9(get_param(result.params, key))
          << "\n";
    }
    rep << "params_file = " << options.params_out << "\n";
    rep << "average_sensitivity_pf_per_rh = " << format_g9(sensitivity)
        << "\n";
    rep << "sensitivity_window = 20-90% RH, adsorption branch at 25 C\n";
    target.finish();
    return result.report.converged ? kExitOk : kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_bet_fit(const BetFitOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    const CsvTable table = read_csv_file(options.isotherm_path);
    const std::size_t col_x =
        column_index(table, "p_over_p0", options.isotherm_path);
    const std::size_t col_v =
        column_index(table, "amount", options.isotherm_path);
    std::vector<IsothermPoint> isotherm;
    isotherm.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      isotherm.push_back(
          {parse_cell(table.rows[i][col_x], options.isotherm_path, i + 1),
           parse_cell(table.rows[i][col_v], options.isotherm_path, i + 1)});
    }
    const BetFitResult fit =
        fit_bet(isotherm, options.range_lo, options.range_hi);

    // Multilayer theory alone cannot produce the late upturn; compare the
    // measured uptake at x = 0.9 against the straight line through the
    // mid-range data to flag capillary condensation (a type IV shape).
    std::vector<IsothermPoint> mid;
    for (const IsothermPoint& p : isotherm) {
      if (p.p_over_p0 >= 0.15 && p.p_over_p0 <= 0.70) mid.push_back(p);
    }
    std::sort(isotherm.begin(), isotherm.end(),
              [](const IsothermPoint& a, const IsothermPoint& b) {
                return a.p_over_p0 < b.p_over_p0;
              });
    bool type_iv_known = false;
    bool type_iv = false;
    double uptake_90 = 0.0;
    double linear_90 = 0.0;
    if (mid.size() >= 2 && isotherm.back().p_over_p0 >= 0.9) {
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (const IsothermPoint& p : mid) {
        sx += p.p_over_p0;
        sy += p.amount;
        sxx += p.p_over_p0 * p.p_over_p0;
        sxy += p.p_over_p0 * p.amount;
      }
      const double n = static_cast<double>(mid.size());
      const double denom = n * sxx - sx * sx;
      if (denom > 0.0) {
        const double slope = (n * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / n;
        linear_90 = intercept + slope * 0.9;
        for (std::size_t i = 1; i < isotherm.size(); ++i) {
          const IsothermPoint& a = isotherm[i - 1];
          const IsothermPoint& b = isotherm[i];
          if (b.p_over_p0 >= 0.9) {
            const double w =
                b.p_over_p0 == a.p_over_p0
                    ? 0.0
                    : (0.9 - a.p_over_p0) / (b.p_over_p0 - a.p_over_p0);
            uptake_90 = a.amount + w * (b.amount - a.amount);
            break;
          }
        }
        type_iv_known = true;
        type_iv = uptake_90 > 1.5 * linear_90;
      }
    }

    OutputTarget target(options.common, out);
    std::ostream& rep = target.stream();
    rep << "multilayer adsorption fit\n";
    rep << "points_used = " << fit.points_used << "\n";
    rep << "v_m = " << format_g9(fit.v_m) << "\n";
    rep << "c = " << format_g9(fit.c) << "\n";
    rep << "r_squared = " << format_g9(fit.r_squared) << "\n";
    rep << "monolayer_x = " << format_g9(fit.monolayer_x) << "\n";
    if (type_iv_known) {
      rep << "uptake_at_x90 = " << format_g9(uptake_90) << "\n";
      rep << "linear_uptake_at_x90 = " << format_g9(linear_90) << "\n";
      rep << "type_iv = " << (type_iv ? "yes" : "no") << "\n";
    } else {
      rep << "type_iv = unknown (isotherm does not span 0.15-0.9)\n";
    }
    target.finish();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_gisaxs_fit(const GisaxsFitOptions& options, std::ostream& out,
                   std::ostream& err) {
  try {
    const CsvTable table = read_csv_file(options.curve_path);
    const std::size_t col_q =
        column_index(table, "q_inv_angstrom", options.curve_path);
    const std::size_t col_i =
        column_index(table, "intensity", options.curve_path);
    std::vector<ScatteringPoint> points;
    points.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      points.push_back(
          {parse_cell(table.rows[i][col_q], options.curve_path, i + 1),
           parse_cell(table.rows[i][col_i], options.curve_path, i + 1)});
    }
    const ScatteringCurve curve = make_scattering_curve(std::move(points));

    // Deterministic starting guess: the first intensity for I(0), the
    // half-intensity crossing for the radius.
    LorentzianParams initial{curve.points.front().intensity, 0.0};
    for (const ScatteringPoint& p : curve.points) {
      if (p.intensity <= initial.i0 / 2.0 && p.q_inv_angstrom > 0.0) {
        initial.radius_a = 1.0 / p.q_inv_angstrom;
        break;
      }
    }
    if (initial.radius_a <= 0.0) {
      const double q_back = curve.points.back().q_inv_angstrom;
      initial.radius_a = q_back > 0.0 ? 1.0 / q_back : 1.0;
    }
    if (initial.i0 <= 0.0) initial.i0 = 1.0;

    const FitReport report = fit_lorentzian(curve, initial);
    const double radius_a = report.params[1];
    const double width_nm = 2.0 * radius_a / 10.0;

    OutputTarget target(options.common, out);
    std::ostream& rep = target.stream();
    rep << "scattering curve fit\n";
    rep << "converged = " << (report.converged ? "yes" : "no") << "\n";
    rep << "iterations = " << report.iterations << "\n";
    rep << "message = " << report.message << "\n";
    rep << "i0 = " << format_g9(report.params[0]) << "\n";
    rep << "radius_angstrom = " << format_g9(radius_a) << "\n";
    rep << "width_nm = " << format_g9(width_nm) << "\n";
    if (!report.converged) {
      rep << "classification = indeterminate\n";
    } else if (width_nm < 2.0) {
      rep << "classification = microporous (width " << format_g3(width_nm)
          << " nm)\n";
    } else if (width_nm <= 50.0) {
      rep << "classification = mesoporous (width " << format_g3(width_nm)
          << " nm)\n";
    } else {
      rep << "classification = macroporous (width " << format_g3(width_nm)
          << " nm)\n";
    }
    target.finish();
    return report.converged ? kExitOk : kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_maintenance(const MaintenanceOptions& options, std::ostream& out,
                    std::ostream& err) {
  try {
    if (!(options.bake_interval_s > 0.0)) {
      throw std::invalid_argument("bake interval must be positive");
    }
    const SensorParams params = resolve_params(options.common);
    const std::vector<TraceRow> rows = parse_trace_csv(options.trace_path);

    // Peak drift offset over the trace; with_bakes drives every heater at
    // its rated power whenever the timestamp falls inside a bake window
    // [k*interval, k*interval + bake_time).
    const auto run = [&](bool with_bakes) {
      double peak = 0.0;
      int bakes = 0;
      if (rows.empty()) return std::pair<double, int>{peak, bakes};
      TwinState state = TwinState::baked(rows.front().temp);
      state.hysteresis = update(state.hysteresis, rows.front().x);
      state.clock_s = rows.front().t_s;
      double prev_t = rows.front().t_s;
      long last_window = 0;
      for (std::size_t i = 1; i < rows.size(); ++i) {
        const TraceRow& row = rows[i];
        if (!(row.t_s > prev_t)) {
          throw std::invalid_argument(
              "trace row " + std::to_string(i + 1) +
              ": timestamps must be strictly increasing");
        }
        std::array<double, kHeaterSegments> power = row.power_w;
        if (with_bakes) {
          const double interval = options.bake_interval_s;
          const long window = static_cast<long>(row.t_s / interval);
          const double phase = row.t_s - interval * window;
          if (window >= 1 && phase < params.drift.bake_time_s) {
            for (int k = 0; k < kHeaterSegments; ++k) {
              power[k] = params.thermal.heater[k].max_power_w;
            }
            if (window > last_window) {
              ++bakes;
              last_window = window;
            }
          }
        }
        auto [next, reading] =
            step(state, AmbientSample{row.x, row.temp}, power,
                 row.t_s - prev_t, params);
        state = next;
        prev_t = row.t_s;
        peak = std::max(peak, state.drift_level * params.drift.max_offset_pf);
      }
      return std::pair<double, int>{peak, bakes};
    };

    const auto [peak_plain, unused] = run(false);
    const auto [peak_baked, bakes] = run(true);

    OutputTarget target(options.common, out);
    std::ostream& rep = target.stream();
    rep << "maintenance report\n";
    rep << "trace_rows = " << rows.size() << "\n";
    rep << "bake_interval_s = " << format_g9(options.bake_interval_s) << "\n";
    rep << "bakes_applied = " << bakes << "\n";
    rep << "peak_drift_offset_no_bake_pf = " << format_g9(peak_plain) << "\n";
    rep << "peak_drift_offset_with_bakes_pf = " << format_g9(peak_baked)
        << "\n";
    const double reduction =
        peak_plain > 0.0 ? 100.0 * (1.0 - peak_baked / peak_plain) : 0.0;
    rep << "drift_reduction_percent = " << format_g9(reduction) << "\n";
    target.finish();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace aaotwin
