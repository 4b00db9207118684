#include "aaotwin/pore_structure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace aaotwin {

namespace {

double standard_normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

void validate_mode(const PoreMode& m) {
  if (!std::isfinite(m.weight) || m.weight <= 0.0) {
    throw std::invalid_argument("pore mode weight must be positive");
  }
  if (!std::isfinite(m.median_radius_nm) || m.median_radius_nm <= 0.0) {
    throw std::invalid_argument("pore mode median radius must be positive");
  }
  if (!std::isfinite(m.sigma_log) || m.sigma_log <= 0.0) {
    throw std::invalid_argument("pore mode log-width must be positive");
  }
}

// E[(1/r) 1{r > b}] for a log-normal with the given median and sigma.
double inverse_moment_above(double median, double sigma, double b) {
  const double mu = std::log(median);
  const double scale = std::exp(-mu + 0.5 * sigma * sigma);
  if (b <= 0.0) return scale;
  return scale * standard_normal_cdf((mu - sigma * sigma - std::log(b)) /
                                     sigma);
}

}  // namespace

PoreDistribution make_pore_distribution(std::vector<PoreMode> modes,
                                        double porosity) {
  if (modes.empty()) {
    throw std::invalid_argument("pore distribution needs at least one mode");
  }
  double total = 0.0;
  for (const PoreMode& m : modes) {
    validate_mode(m);
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("pore mode weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
  if (!std::isfinite(porosity) || porosity <= 0.0 || porosity >= 1.0) {
    throw std::invalid_argument("porosity must lie strictly inside (0, 1)");
  }
  return PoreDistribution{std::move(modes), porosity};
}

PoreDistribution default_alumina_distribution() {
  return make_pore_distribution(
      {
          PoreMode{0.5, 0.86, 0.35},  // cell-wall micropores
          PoreMode{0.5, 4.5, 0.35},   // columnar mesopores
      },
      0.30);
}

double volume_cdf(const PoreDistribution& dist, double r_nm) {
  if (std::isnan(r_nm)) {
    throw std::invalid_argument("radius must not be NaN");
  }
  if (r_nm <= 0.0) return 0.0;
  if (std::isinf(r_nm)) return 1.0;
  double acc = 0.0;
  for (const PoreMode& m : dist.modes) {
    acc += m.weight * standard_normal_cdf(
                          (std::log(r_nm) - std::log(m.median_radius_nm)) /
                          m.sigma_log);
  }
  return acc;
}

double film_volume_fraction_above(const PoreDistribution& dist,
                                  double cutoff_nm, double t_nm) {
  if (t_nm < 0.0 || std::isnan(t_nm)) {
    throw std::invalid_argument("film thickness must be non-negative");
  }
  if (t_nm == 0.0) return 0.0;
  const double tail = 1.0 - volume_cdf(dist, cutoff_nm);
  if (tail <= 1e-300) return 0.0;
  const double a = std::max(cutoff_nm, 0.0);
  double acc = 0.0;
  for (const PoreMode& m : dist.modes) {
    // Pores below t are fully occupied by film; above, the share is t/r.
    double full = 0.0;
    if (t_nm > a) {
      const double f_t =
          standard_normal_cdf((std::log(t_nm) - std::log(m.median_radius_nm)) /
                              m.sigma_log);
      const double f_a =
          a > 0.0 ? standard_normal_cdf(
                        (std::log(a) - std::log(m.median_radius_nm)) /
                        m.sigma_log)
                  : 0.0;
      full = std::max(f_t - f_a, 0.0);
    }
    const double partial =
        t_nm * inverse_moment_above(m.median_radius_nm, m.sigma_log,
                                    std::max(a, t_nm));
    acc += m.weight * (full + partial);
  }
  return std::min(acc / tail, 1.0);
}

ScatteringCurve make_scattering_curve(std::vector<ScatteringPoint> points) {
  if (points.size() < 5) {
    throw std::invalid_argument(
        "scattering curve needs at least 5 points, got " +
        std::to_string(points.size()));
  }
  double prev_q = -std::numeric_limits<double>::infinity();
  for (const ScatteringPoint& p : points) {
    if (!std::isfinite(p.q_inv_angstrom) || p.q_inv_angstrom < 0.0) {
      throw std::invalid_argument("q must be finite and non-negative");
    }
    if (p.q_inv_angstrom <= prev_q) {
      throw std::invalid_argument("q values must be strictly increasing");
    }
    if (!std::isfinite(p.intensity) || p.intensity < 0.0) {
      throw std::invalid_argument("intensity must be finite and non-negative");
    }
    prev_q = p.q_inv_angstrom;
  }
  return ScatteringCurve{std::move(points)};
}

double lorentzian_intensity(double q_inv_angstrom,
                            const LorentzianParams& params) {
  if (!std::isfinite(params.i0) || params.i0 <= 0.0) {
    throw std::invalid_argument("forward intensity must be positive");
  }
  if (!std::isfinite(params.radius_a) || params.radius_a <= 0.0) {
    throw std::invalid_argument("correlation radius must be positive");
  }
  const double rq = params.radius_a * q_inv_angstrom;
  return params.i0 / (1.0 + rq * rq);
}

FitReport fit_lorentzian(const ScatteringCurve& curve,
                         const LorentzianParams& initial) {
  if (!std::isfinite(initial.i0) || initial.i0 <= 0.0 ||
      !std::isfinite(initial.radius_a) || initial.radius_a <= 0.0) {
    throw std::invalid_argument("initial Lorentzian guess must be positive");
  }
  FitProblem problem;
  problem.residual = [&curve](const std::vector<double>& p) {
    std::vector<double> r;
    r.reserve(curve.points.size());
    for (const ScatteringPoint& pt : curve.points) {
      const double rq = p[1] * pt.q_inv_angstrom;
      r.push_back(p[0] / (1.0 + rq * rq) - pt.intensity);
    }
    return r;
  };
  problem.lower = {0.0, 0.0};
  problem.upper = {std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
  const auto solve_from = [&](double i0, double radius_a) {
    problem.initial = {i0, radius_a};
    problem.scale = {std::max(i0, 1.0), std::max(radius_a, 1.0)};
    FitReport report = least_squares(problem);
    // A radius pinned at zero, or one so small the model is flat across the
    // whole measured q range, is an unresolved width, not a radius estimate.
    const double rq_max =
        std::max(report.params[1], 0.0) * curve.points.back().q_inv_angstrom;
    const double relative_depth = rq_max * rq_max / (1.0 + rq_max * rq_max);
    if (report.at_lower_bound[1] || report.params[1] <= 0.0 ||
        relative_depth < 1e-9) {
      report.converged = false;
      report.message =
          "correlation radius collapsed toward zero; the curve carries no "
          "measurable width";
    }
    return report;
  };

  const FitReport report = solve_from(initial.i0, initial.radius_a);
  if (report.converged) return report;
  // A far-off start can slide into the flat-model minimum. Retry once from a
  // half-maximum estimate read off the curve (a Lorentzian halves at rq = 1);
  // a genuinely flat curve has no crossing and keeps the collapse verdict.
  double peak = 0.0;
  for (const ScatteringPoint& pt : curve.points) {
    peak = std::max(peak, pt.intensity);
  }
  double q_half = 0.0;
  for (const ScatteringPoint& pt : curve.points) {
    if (pt.q_inv_angstrom > 0.0 && pt.intensity <= 0.5 * peak) {
      q_half = pt.q_inv_angstrom;
      break;
    }
  }
  if (peak > 0.0 && q_half > 0.0) {
    const FitReport retry = solve_from(peak, 1.0 / q_half);
    if (retry.converged) return retry;
  }
  return report;
}

}  // namespace aaotwin
