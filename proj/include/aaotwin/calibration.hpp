#pragma once

#include <string>
#include <vector>

#include "aaotwin/dielectric.hpp"
#include "aaotwin/fit.hpp"
#include "aaotwin/io.hpp"
#include "aaotwin/quantities.hpp"
#include "aaotwin/twin.hpp"

namespace aaotwin {

struct CalibrationPoint {
  RelHumidity x;
  Capacitance c;
  Branch branch = Branch::unknown;
  Temperature temp = Temperature::from_celsius(25.0);
};

struct CalibrationDataset {
  std::vector<CalibrationPoint> points;
  double frequency_hz = 16000.0;  // LC excitation the readings were taken at
  std::string source;
};

// Saturated-salt fixed points from a config with one [salt.<name>] section
// per salt carrying rh_percent and capacitance_pf. All points sit at 25 C
// with no branch label. Duplicate salts or RH outside (0, 100) are rejected.
CalibrationDataset load_fixed_points(const ConfigFile& config);

struct CalibrationResult {
  SensorParams params;
  FitReport report;
  std::vector<std::string> warnings;
};

// Fits the quasi-static forward model to measured capacitances over the
// requested free parameter keys. Points labeled descending are evaluated on
// the major desorption branch; unknown-branch points use the adsorption
// branch and are only accepted up to 50% RH, where the loop is still thin.
// When the dataset cannot identify every requested parameter the mask is
// reduced (keeping the most identifiable keys first) and each dropped key
// is reported as a warning. Freeing angles.receding_deg fits the advancing
// angle and the log of the angle gap, so the receding angle stays below the
// advancing one by construction.
CalibrationResult calibrate_sensor(const CalibrationDataset& data,
                                   const SensorParams& init,
                                   const std::vector<std::string>& free_keys);

}  // namespace aaotwin
