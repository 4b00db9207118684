#pragma once

#include <vector>

#include "aaotwin/pore_structure.hpp"
#include "aaotwin/quantities.hpp"
#include "aaotwin/sorption.hpp"

namespace aaotwin {

// Memory of the pore network: the sequence of dominant humidity extrema
// that survive the wiping-out rule, plus the running humidity. Corners
// alternate max, min, max, ... with maxima strictly decreasing and minima
// strictly increasing; an empty corner list at zero humidity is the freshly
// baked (dry) state.
class HysteresisState {
 public:
  static HysteresisState baked();

  const std::vector<double>& corners() const { return corners_; }
  RelHumidity current() const { return current_; }
  bool rising() const { return rising_; }
  bool freshly_baked() const {
    return corners_.empty() && current_.fraction() == 0.0;
  }
  // Corner list with the running humidity appended as the active extremum.
  std::vector<double> extrema() const;

  friend HysteresisState update(const HysteresisState& state, RelHumidity x);

 private:
  std::vector<double> corners_;
  RelHumidity current_;
  bool rising_ = true;
};

// Applies a new ambient humidity. A rising humidity wipes every stored
// extremum it dominates and becomes the active maximum; falling is the
// mirror image.
HysteresisState update(const HysteresisState& state, RelHumidity x);

struct FilledFraction {
  double liquid;  // share of pore volume flooded by capillary condensate
  double film;    // share of the remaining volume held as adsorbed film
};

double water_volume_fraction(const FilledFraction& f);

// Largest physical pore radius currently flooded, from replaying the
// dominant extrema against the advancing/receding thresholds at the given
// temperature. radius_scale > 1 models swollen walls: thresholds see pores
// scaled by that factor. Returns +infinity when everything is flooded.
double flooded_radius_nm(const HysteresisState& state,
                         const ContactAngles& angles, Temperature t,
                         double radius_scale = 1.0);

FilledFraction filled_fraction(const HysteresisState& state,
                               const PoreDistribution& dist,
                               const ContactAngles& angles,
                               const BetParams& bet, Temperature t,
                               double radius_scale = 1.0);

enum class BranchDirection { ascending, descending };

struct BranchPoint {
  double x;
  FilledFraction fill;
};

// Quasi-static major-loop branch: ascending sweeps up from the baked state,
// descending sweeps down from saturation. samples >= 2, uniform in x.
std::vector<BranchPoint> branch_curve(const PoreDistribution& dist,
                                      const ContactAngles& angles,
                                      const BetParams& bet, Temperature t,
                                      BranchDirection direction, int samples);

}  // namespace aaotwin
