#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace aaotwin {

// Nonlinear least-squares problem. residual returns one entry per data
// point; the engine owns the Jacobian (central differences) and bounds
// (steps are clamped into [lower, upper]). scale is a per-parameter
// magnitude used for relative step norms; it defaults to 1.
struct FitProblem {
  std::function<std::vector<double>(const std::vector<double>&)> residual;
  std::vector<double> initial;
  std::vector<double> lower;  // empty = unbounded
  std::vector<double> upper;
  std::vector<double> scale;
  int max_iterations = 200;
};

struct FitReport {
  std::vector<double> params;
  double residual_norm = 0.0;
  int iterations = 0;  // accepted steps
  bool converged = false;
  std::string message;
  // Gauss-Newton covariance estimate s^2 (J^T J)^+, symmetric PSD.
  std::vector<std::vector<double>> covariance;
  std::vector<bool> at_lower_bound;
  std::vector<bool> at_upper_bound;
  // Residual norm after each accepted step, starting with the initial norm;
  // monotone non-increasing by construction.
  std::vector<double> accepted_norms;
};

// Damped Gauss-Newton descent. Damping starts at 1e-3, is divided by 10 on
// every accepted step and multiplied by 10 on every rejected one; a singular
// system escalates damping the same way and only becomes an error past 1e12.
// Stops on relative residual decrease < 1e-10, relative parameter step
// < 1e-10, residual norm below 1e-11 of its initial value, or the iteration
// cap (the cap alone leaves converged = false).
FitReport least_squares(const FitProblem& problem);

// Straight-line transform fit of a multilayer isotherm restricted to
// [range_lo, range_hi] in saturation ratio.
struct BetFitResult {
  double v_m = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  double monolayer_x = 0.0;  // saturation ratio where coverage reaches 1
  int points_used = 0;
};

struct IsothermPoint {
  double p_over_p0;
  double amount;
};

BetFitResult fit_bet(const std::vector<IsothermPoint>& isotherm,
                     double range_lo = 0.05, double range_hi = 0.35);

}  // namespace aaotwin
