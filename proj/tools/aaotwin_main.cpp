#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "aaotwin/cli.hpp"

namespace {

void add_common(CLI::App* cmd, aaotwin::CommonOptions* common) {
  cmd->add_option("--config", common->config_path,
                  "Parameter file with key = value lines (dotted keys)");
  cmd->add_option("--set", common->overrides,
                  "Override a parameter, key=value (repeatable; wins over "
                  "--config)");
  cmd->add_option("--out", common->out_path,
                  "Write the primary output here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Digital twin and calibration toolkit for capacitive porous-alumina "
      "humidity sensors"};
  app.require_subcommand(1);

  aaotwin::LoopOptions loop_opts;
  CLI::App* loop = app.add_subcommand(
      "loop", "Emit the quasi-static major hysteresis loop as CSV");
  add_common(loop, &loop_opts.common);
  loop->add_option("--samples", loop_opts.samples,
                   "Grid points per branch (>= 2)")
      ->capture_default_str();
  loop->add_option("--temp-c", loop_opts.temp_c, "Evaluation temperature, C")
      ->capture_default_str();

  aaotwin::SimulateOptions sim_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run an environment trace through the twin");
  add_common(simulate, &sim_opts.common);
  simulate
      ->add_option("trace", sim_opts.trace_path,
                   "CSV: t_s,rh_percent,temp_c[,p1_w..p8_w]")
      ->required();

  aaotwin::CalibrateOptions cal_opts;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Fit sensor parameters to measured capacitances");
  add_common(calibrate, &cal_opts.common);
  calibrate->add_option("data", cal_opts.data_path,
                        "CSV: rh_percent,capacitance_pf,branch,temp_c");
  calibrate->add_option("--salts", cal_opts.salts_path,
                        "Saturated-salt fixed points ([salt.<name>] config)");
  calibrate
      ->add_option("--params-out", cal_opts.params_out,
                   "Where to write the fitted parameter file")
      ->capture_default_str();
  calibrate->add_option(
      "--free", cal_opts.free_keys,
      "Parameter key to fit (repeatable; 'none' clears the mask; default is "
      "the standard mask)");

  aaotwin::BetFitOptions bet_opts;
  CLI::App* bet_fit = app.add_subcommand(
      "bet-fit", "Fit the multilayer-adsorption line to an isotherm");
  add_common(bet_fit, &bet_opts.common);
  bet_fit->add_option("isotherm", bet_opts.isotherm_path,
                      "CSV: p_over_p0,amount")
      ->required();
  bet_fit->add_option("--range-lo", bet_opts.range_lo,
                      "Lower edge of the fitting window in p/p0")
      ->capture_default_str();
  bet_fit->add_option("--range-hi", bet_opts.range_hi,
                      "Upper edge of the fitting window in p/p0")
      ->capture_default_str();

  aaotwin::GisaxsFitOptions gis_opts;
  CLI::App* gisaxs = app.add_subcommand(
      "gisaxs-fit", "Fit a Lorentzian to a small-angle scattering curve");
  add_common(gisaxs, &gis_opts.common);
  gisaxs->add_option("curve", gis_opts.curve_path,
                     "CSV: q_inv_angstrom,intensity")
      ->required();

  aaotwin::MaintenanceOptions mnt_opts;
  CLI::App* maintenance = app.add_subcommand(
      "maintenance", "Compare drift with and without scheduled bakes");
  add_common(maintenance, &mnt_opts.common);
  maintenance
      ->add_option("trace", mnt_opts.trace_path,
                   "CSV: t_s,rh_percent,temp_c[,p1_w..p8_w]")
      ->required();
  maintenance
      ->add_option("--bake-interval-s", mnt_opts.bake_interval_s,
                   "Seconds between scheduled bakes (> 0)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? aaotwin::kExitOk : aaotwin::kExitUsage;
  }

  // --free none clears the default mask so an empty selection is expressible.
  for (auto it = cal_opts.free_keys.begin(); it != cal_opts.free_keys.end();) {
    if (*it == "none") {
      cal_opts.clear_mask = true;
      it = cal_opts.free_keys.erase(it);
    } else {
      ++it;
    }
  }

  if (*loop) return aaotwin::cmd_loop(loop_opts, std::cout, std::cerr);
  if (*simulate) return aaotwin::cmd_simulate(sim_opts, std::cout, std::cerr);
  if (*calibrate) {
    return aaotwin::cmd_calibrate(cal_opts, std::cout, std::cerr);
  }
  if (*bet_fit) return aaotwin::cmd_bet_fit(bet_opts, std::cout, std::cerr);
  if (*gisaxs) return aaotwin::cmd_gisaxs_fit(gis_opts, std::cout, std::cerr);
  if (*maintenance) {
    return aaotwin::cmd_maintenance(mnt_opts, std::cout, std::cerr);
  }
  return aaotwin::kExitUsage;
}
