#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "aaotwin/hysteresis.hpp"
#include "doctest.h"

using namespace aaotwin;

namespace {

const Temperature kRoom = Temperature::from_celsius(25.0);
const ContactAngles kAngles{};  // 70 advancing / 38 receding
const BetParams kBet{};

double mixture_cdf(const PoreDistribution& d, double r) {
  if (r <= 0.0) return 0.0;
  double acc = 0.0;
  for (const PoreMode& mode : d.modes) {
    const double z = (std::log(r) - std::log(mode.median_radius_nm)) /
                     (mode.sigma_log * std::sqrt(2.0));
    acc += mode.weight * 0.5 * std::erfc(-z);
  }
  return acc;
}

double quantile(const PoreDistribution& d, double p) {
  double lo = 1e-8, hi = 1e8;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    (mixture_cdf(d, mid) < p ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

// Equal-volume sample pores for the default distribution, shared by every
// brute-force history.
const std::vector<double>& sample_radii() {
  static const std::vector<double> radii = [] {
    const PoreDistribution d = default_alumina_distribution();
    std::vector<double> out;
    const int n = 10000;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(quantile(d, (i + 0.5) / n));
    return out;
  }();
  return radii;
}

double fill_threshold(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  return kelvin_radius(RelHumidity::from_fraction(x), kRoom,
                       kAngles.advancing_deg, water_properties(kRoom));
}

double empty_threshold(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  return kelvin_radius(RelHumidity::from_fraction(x), kRoom,
                       kAngles.receding_deg, water_properties(kRoom));
}

// Pore-by-pore replay: every sampled pore keeps its own flooded flag, updated
// against the advancing threshold on every rise and the receding threshold on
// every fall. This is the definition the corner-stack replay must match.
struct BruteForce {
  std::vector<bool> flooded;
  double cur = 0.0;
  double scale;

  explicit BruteForce(double radius_scale) : scale(radius_scale) {
    flooded.assign(sample_radii().size(), false);
  }

  void apply(double x) {
    const std::vector<double>& radii = sample_radii();
    if (x > cur) {
      const double thr = fill_threshold(x);
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] * scale <= thr) flooded[i] = true;
      }
    } else if (x < cur) {
      const double thr = empty_threshold(x);
      for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] * scale > thr) flooded[i] = false;
      }
    }
    cur = x;
  }

  FilledFraction eval() const {
    const std::vector<double>& radii = sample_radii();
    std::size_t wet = 0;
    for (bool f : flooded) wet += f ? 1 : 0;
    const double liquid = static_cast<double>(wet) / radii.size();
    if (cur >= 1.0 || wet == radii.size()) return {1.0, 0.0};
    if (cur <= 0.0) return {liquid, 0.0};
    const double coverage = bet_coverage(RelHumidity::from_fraction(cur),
                                         bet_c(kBet.e1_minus_el_j_per_mol,
                                               kRoom));
    const double t_eff = kBet.t_mono_nm * coverage / scale;
    double film_sum = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!flooded[i]) film_sum += std::min(1.0, t_eff / radii[i]);
    }
    return {liquid, film_sum / (radii.size() - wet)};
  }
};

}  // namespace

TEST_CASE("a single rise wipes everything it dominates") {
  HysteresisState s = HysteresisState::baked();
  CHECK(s.freshly_baked());
  s = update(s, RelHumidity::from_fraction(0.95));
  CHECK(s.extrema() == std::vector<double>{0.95});
  s = update(s, RelHumidity::from_fraction(0.30));
  CHECK(s.extrema() == std::vector<double>{0.95, 0.30});
  s = update(s, RelHumidity::from_fraction(0.60));
  CHECK(s.extrema() == std::vector<double>{0.95, 0.30, 0.60});
  // 0.97 dominates the stored 0.95 maximum, so the whole excursion vanishes.
  s = update(s, RelHumidity::from_fraction(0.97));
  CHECK(s.extrema() == std::vector<double>{0.97});
  CHECK(s.corners().empty());
  CHECK(s.rising());
}

TEST_CASE("updating with the running humidity is a no-op") {
  HysteresisState s = HysteresisState::baked();
  s = update(s, RelHumidity::from_fraction(0.4));
  s = update(s, RelHumidity::from_fraction(0.2));
  const HysteresisState same = update(s, RelHumidity::from_fraction(0.2));
  CHECK(same.corners() == s.corners());
  CHECK(same.current().fraction() == 0.2);
  CHECK(same.rising() == s.rising());
}

TEST_CASE("corner stack keeps its alternation and ordering invariants") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  HysteresisState s = HysteresisState::baked();
  for (int step = 0; step < 2000; ++step) {
    double x = uni(rng);
    if (step % 17 == 0) x = 0.0;
    if (step % 23 == 0) x = 1.0;
    s = update(s, RelHumidity::from_fraction(x));
    const std::vector<double>& c = s.corners();
    // Rising states hold complete (max, min) pairs; falling states a
    // trailing unmatched maximum.
    CHECK(c.size() % 2 == (s.rising() ? 0u : 1u));
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      if (i % 2 == 0) {
        CHECK(c[i] > c[i + 1]);  // max above its following min
      } else {
        CHECK(c[i] < c[i + 1]);
      }
    }
    for (std::size_t i = 0; i + 2 < c.size(); ++i) {
      if (i % 2 == 0) {
        CHECK(c[i] > c[i + 2]);  // maxima strictly shrink inward
      } else {
        CHECK(c[i] < c[i + 2]);  // minima strictly grow inward
      }
    }
    const double cur = s.current().fraction();
    if (!c.empty()) {
      if (s.rising()) {
        CHECK(cur > c.back());
        CHECK(cur < c[c.size() - 2]);
      } else {
        CHECK(cur < c.back());
        if (c.size() >= 2) CHECK(cur > c[c.size() - 2]);
      }
    }
  }
}

TEST_CASE("return-point memory: closing a minor loop restores the state") {
  HysteresisState s = HysteresisState::baked();
  s = update(s, RelHumidity::from_fraction(0.8));
  const PoreDistribution d = default_alumina_distribution();
  const FilledFraction before =
      filled_fraction(s, d, kAngles, kBet, kRoom);
  HysteresisState looped = update(s, RelHumidity::from_fraction(0.4));
  looped = update(looped, RelHumidity::from_fraction(0.8));
  CHECK(looped.corners() == s.corners());
  const FilledFraction after =
      filled_fraction(looped, d, kAngles, kBet, kRoom);
  CHECK(after.liquid == before.liquid);
  CHECK(after.film == before.film);

  // Same closure from a non-trivial prehistory.
  HysteresisState deep = HysteresisState::baked();
  for (double x : {0.9, 0.2, 0.7}) {
    deep = update(deep, RelHumidity::from_fraction(x));
  }
  const FilledFraction f0 = filled_fraction(deep, d, kAngles, kBet, kRoom);
  HysteresisState cycled = update(deep, RelHumidity::from_fraction(0.5));
  cycled = update(cycled, RelHumidity::from_fraction(0.7));
  const FilledFraction f1 = filled_fraction(cycled, d, kAngles, kBet, kRoom);
  CHECK(f1.liquid == f0.liquid);
  CHECK(f1.film == f0.film);
}

TEST_CASE("major branches reduce to single Kelvin thresholds") {
  const PoreDistribution d = default_alumina_distribution();
  const WaterProperties water = water_properties(kRoom);
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    HysteresisState asc = HysteresisState::baked();
    asc = update(asc, RelHumidity::from_fraction(x));
    const FilledFraction fa = filled_fraction(asc, d, kAngles, kBet, kRoom);
    const double r_fill = kelvin_radius(RelHumidity::from_fraction(x), kRoom,
                                        kAngles.advancing_deg, water);
    CHECK(fa.liquid == doctest::Approx(volume_cdf(d, r_fill)).epsilon(1e-12));

    HysteresisState desc = HysteresisState::baked();
    desc = update(desc, RelHumidity::from_fraction(1.0));
    desc = update(desc, RelHumidity::from_fraction(x));
    const FilledFraction fd = filled_fraction(desc, d, kAngles, kBet, kRoom);
    const double r_empty = kelvin_radius(RelHumidity::from_fraction(x), kRoom,
                                         kAngles.receding_deg, water);
    CHECK(fd.liquid == doctest::Approx(volume_cdf(d, r_empty)).epsilon(1e-12));

    // Desorption retains strictly more condensate in the interior.
    CHECK(fd.liquid > fa.liquid);
  }
}

TEST_CASE("saturation floods everything, bake-out holds nothing") {
  const PoreDistribution d = default_alumina_distribution();
  HysteresisState s = HysteresisState::baked();
  FilledFraction f = filled_fraction(s, d, kAngles, kBet, kRoom);
  CHECK(f.liquid == 0.0);
  CHECK(f.film == 0.0);
  CHECK(flooded_radius_nm(s, kAngles, kRoom) == 0.0);
  s = update(s, RelHumidity::from_fraction(1.0));
  f = filled_fraction(s, d, kAngles, kBet, kRoom);
  CHECK(f.liquid == 1.0);
  CHECK(f.film == 0.0);
  CHECK(std::isinf(flooded_radius_nm(s, kAngles, kRoom)));
}

TEST_CASE("flooded radius scales inversely with wall swelling") {
  HysteresisState s = HysteresisState::baked();
  s = update(s, RelHumidity::from_fraction(0.7));
  const double base = flooded_radius_nm(s, kAngles, kRoom, 1.0);
  CHECK(flooded_radius_nm(s, kAngles, kRoom, 2.0) ==
        doctest::Approx(base / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(flooded_radius_nm(s, kAngles, kRoom, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(flooded_radius_nm(s, kAngles, kRoom, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      flooded_radius_nm(s, kAngles, kRoom,
                        std::numeric_limits<double>::infinity()),
      std::invalid_argument);
}

TEST_CASE("swollen walls admit less condensate at the same humidity") {
  const PoreDistribution d = default_alumina_distribution();
  HysteresisState s = HysteresisState::baked();
  s = update(s, RelHumidity::from_fraction(0.7));
  const FilledFraction plain = filled_fraction(s, d, kAngles, kBet, kRoom);
  const FilledFraction swollen =
      filled_fraction(s, d, kAngles, kBet, kRoom, 1.5);
  CHECK(swollen.liquid < plain.liquid);
}

TEST_CASE("water volume combines condensate and film shares") {
  CHECK(water_volume_fraction({0.3, 0.5}) == doctest::Approx(0.65));
  CHECK(water_volume_fraction({0.0, 0.0}) == 0.0);
  CHECK(water_volume_fraction({1.0, 0.0}) == 1.0);
}

TEST_CASE("branch curves close the loop and match the closed forms") {
  const PoreDistribution d = default_alumina_distribution();
  CHECK_THROWS_AS(branch_curve(d, kAngles, kBet, kRoom,
                               BranchDirection::ascending, 1),
                  std::invalid_argument);
  const auto asc =
      branch_curve(d, kAngles, kBet, kRoom, BranchDirection::ascending, 51);
  const auto desc =
      branch_curve(d, kAngles, kBet, kRoom, BranchDirection::descending, 51);
  REQUIRE(asc.size() == 51);
  REQUIRE(desc.size() == 51);
  CHECK(asc.front().x == 0.0);
  CHECK(asc.front().fill.liquid == 0.0);
  CHECK(asc.back().fill.liquid == 1.0);
  CHECK(desc.front().fill.liquid == 0.0);
  CHECK(desc.back().fill.liquid == 1.0);
  const WaterProperties water = water_properties(kRoom);
  for (std::size_t i = 1; i + 1 < asc.size(); ++i) {
    const double x = asc[i].x;
    const double r_fill = kelvin_radius(RelHumidity::from_fraction(x), kRoom,
                                        kAngles.advancing_deg, water);
    CHECK(asc[i].fill.liquid ==
          doctest::Approx(volume_cdf(d, r_fill)).epsilon(1e-12));
    CHECK(desc[i].fill.liquid >= asc[i].fill.liquid);
  }
}

TEST_CASE("corner-stack replay agrees with pore-by-pore simulation") {
  const PoreDistribution d = default_alumina_distribution();
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int history = 0; history < 60; ++history) {
    const double scale = history % 3 == 2 ? 1.3 : 1.0;
    HysteresisState s = HysteresisState::baked();
    BruteForce bf(scale);
    for (int step = 0; step < 10; ++step) {
      double x = uni(rng);
      const double pick = uni(rng);
      if (pick < 0.05) x = 0.0;
      if (pick > 0.95) x = 1.0;
      s = update(s, RelHumidity::from_fraction(x));
      bf.apply(x);
      const FilledFraction model =
          filled_fraction(s, d, kAngles, kBet, kRoom, scale);
      const FilledFraction ref = bf.eval();
      CHECK(std::abs(model.liquid - ref.liquid) < 2e-4);
      CHECK(std::abs(water_volume_fraction(model) -
                     water_volume_fraction(ref)) < 3e-4);
      // The film average is only resolvable while enough sample pores stay
      // dry; past that the total water comparison above still binds.
      if (model.liquid < 0.95 && ref.liquid < 0.95) {
        CHECK(std::abs(model.film - ref.film) < 1e-3);
      }
    }
  }
}
