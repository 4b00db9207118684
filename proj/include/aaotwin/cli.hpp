#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aaotwin/twin.hpp"

namespace aaotwin {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;

// Flags shared by every subcommand: an optional parameter config file,
// repeatable key=value overrides, and the primary output path (empty means
// the provided stream).
struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
};

// Built-in defaults, overlaid by the config file, overlaid by --set
// overrides. Unknown keys and unparsable values are rejected.
SensorParams resolve_params(const CommonOptions& options);

struct LoopOptions {
  CommonOptions common;
  int samples = 101;
  double temp_c = 25.0;
};

struct SimulateOptions {
  CommonOptions common;
  std::string trace_path;
};

struct CalibrateOptions {
  CommonOptions common;
  std::string data_path;   // calibration CSV
  std::string salts_path;  // alternative: saturated-salt fixed points
  std::string params_out = "calibrated.params";
  std::vector<std::string> free_keys;  // empty selects the standard mask
  bool clear_mask = false;             // --free none
};

struct BetFitOptions {
  CommonOptions common;
  std::string isotherm_path;
  double range_lo = 0.05;
  double range_hi = 0.35;
};

struct GisaxsFitOptions {
  CommonOptions common;
  std::string curve_path;
};

struct MaintenanceOptions {
  CommonOptions common;
  std::string trace_path;
  double bake_interval_s = 0.0;
};

// Each command writes its primary output to `out` (or common.out_path when
// set) and diagnostics to `err`, returning a process exit code: 0 success,
// 2 input or usage error, 3 numerical non-convergence.
int cmd_loop(const LoopOptions& options, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_calibrate(const CalibrateOptions& options, std::ostream& out,
                  std::ostream& err);
int cmd_bet_fit(const BetFitOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_gisaxs_fit(const GisaxsFitOptions& options, std::ostream& out,
                   std::ostream& err);
int cmd_maintenance(const MaintenanceOptions& options, std::ostream& out,
                    std::ostream& err);

}  // namespace aaotwin
