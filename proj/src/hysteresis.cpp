#include "aaotwin/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aaotwin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Radius filled when the humidity rises to x (advancing meniscus).
double fill_radius(double x, const ContactAngles& angles, Temperature t,
                   const WaterProperties& water) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return kInf;
  return kelvin_radius(RelHumidity::from_fraction(x), t,
                       angles.advancing_deg, water);
}

// Radius above which pores have emptied after the humidity fell to x
// (receding meniscus).
double empty_radius(double x, const ContactAngles& angles, Temperature t,
                    const WaterProperties& water) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return kInf;
  return kelvin_radius(RelHumidity::from_fraction(x), t,
                       angles.receding_deg, water);
}

}  // namespace

HysteresisState HysteresisState::baked() { return HysteresisState{}; }

std::vector<double> HysteresisState::extrema() const {
  std::vector<double> seq = corners_;
  seq.push_back(current_.fraction());
  return seq;
}

HysteresisState update(const HysteresisState& state, RelHumidity x) {
  const double x_new = x.fraction();
  const double cur = state.current_.fraction();
  if (x_new == cur) return state;

  HysteresisState next = state;
  if (x_new > cur) {
    if (!next.rising_) next.corners_.push_back(cur);  // reversal: a minimum
    // The rise erases every (max, min) pair it dominates.
    while (next.corners_.size() >= 2 &&
           x_new >= next.corners_[next.corners_.size() - 2]) {
      next.corners_.pop_back();
      next.corners_.pop_back();
    }
    next.rising_ = true;
  } else {
    if (next.rising_ && cur > 0.0) next.corners_.push_back(cur);  // a maximum
    while (next.corners_.size() >= 2 &&
           x_new <= next.corners_[next.corners_.size() - 2]) {
      next.corners_.pop_back();
      next.corners_.pop_back();
    }
    next.rising_ = false;
  }
  next.current_ = x;
  return next;
}

double water_volume_fraction(const FilledFraction& f) {
  return f.liquid + f.film * (1.0 - f.liquid);
}

double flooded_radius_nm(const HysteresisState& state,
                         const ContactAngles& angles, Temperature t,
                         double radius_scale) {
  if (!(radius_scale > 0.0) || !std::isfinite(radius_scale)) {
    throw std::invalid_argument("radius scale must be positive and finite");
  }
  const WaterProperties water = water_properties(t);
  // Replay the surviving extrema: each maximum floods a prefix of radii,
  // each minimum drains a suffix; the state stays a single prefix.
  double cutoff = 0.0;
  bool is_max = true;
  for (double v : state.corners()) {
    cutoff = is_max ? std::max(cutoff, fill_radius(v, angles, t, water))
                    : std::min(cutoff, empty_radius(v, angles, t, water));
    is_max = !is_max;
  }
  const double cur = state.current().fraction();
  cutoff = state.rising()
               ? std::max(cutoff, fill_radius(cur, angles, t, water))
               : std::min(cutoff, empty_radius(cur, angles, t, water));
  return cutoff / radius_scale;
}

FilledFraction filled_fraction(const HysteresisState& state,
                               const PoreDistribution& dist,
                               const ContactAngles& angles,
                               const BetParams& bet, Temperature t,
                               double radius_scale) {
  const double cutoff = flooded_radius_nm(state, angles, t, radius_scale);
  const double x = state.current().fraction();
  if (x >= 1.0 || std::isinf(cutoff)) {
    return FilledFraction{1.0, 0.0};
  }
  const double liquid = volume_cdf(dist, cutoff);
  if (x <= 0.0) {
    return FilledFraction{liquid, 0.0};
  }
  const double coverage =
      bet_coverage(RelHumidity::from_fraction(x),
                   bet_c(bet.e1_minus_el_j_per_mol, t));
  // Swollen walls shrink the relative room a film takes in the same way they
  // shift the flooding thresholds.
  const double t_eff = bet.t_mono_nm * coverage / radius_scale;
  const double film = film_volume_fraction_above(dist, cutoff, t_eff);
  return FilledFraction{liquid, film};
}

std::vector<BranchPoint> branch_curve(const PoreDistribution& dist,
                                      const ContactAngles& angles,
                                      const BetParams& bet, Temperature t,
                                      BranchDirection direction, int samples) {
  if (samples < 2) {
    throw std::invalid_argument("branch curve needs at least 2 samples");
  }
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = static_cast<double>(i) / (samples - 1);
  }
  std::vector<BranchPoint> out;
  out.reserve(samples);
  HysteresisState state = HysteresisState::baked();
  if (direction == BranchDirection::ascending) {
    for (double x : xs) {
      state = update(state, RelHumidity::from_fraction(x));
      out.push_back({x, filled_fraction(state, dist, angles, bet, t)});
    }
  } else {
    state = update(state, RelHumidity::from_fraction(1.0));
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
      state = update(state, RelHumidity::from_fraction(*it));
      out.push_back({*it, filled_fraction(state, dist, angles, bet, t)});
    }
    std::reverse(out.begin(), out.end());
  }
  return out;
}

}  // namespace aaotwin
