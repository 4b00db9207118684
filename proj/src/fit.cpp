#include "aaotwin/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aaotwin/quantities.hpp"
#include "aaotwin/sorption.hpp"

namespace aaotwin {

namespace {

constexpr double kDampingStart = 1e-3;
constexpr double kDampingLimit = 1e12;
constexpr double kRelTol = 1e-10;
constexpr double kResidualFloorRel = 1e-11;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<long>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

double fd_step(double theta) {
  return std::max(1e-6 * std::abs(theta), 1e-8);
}

Eigen::VectorXd eval(const FitProblem& p, const Eigen::VectorXd& theta,
                     long expected_m) {
  const std::vector<double> r = p.residual(to_std(theta));
  if (expected_m >= 0 && static_cast<long>(r.size()) != expected_m) {
    throw std::invalid_argument("residual size changed between evaluations");
  }
  Eigen::VectorXd out = to_eigen(r);
  if (!out.allFinite()) {
    throw std::invalid_argument("residual returned a non-finite value");
  }
  return out;
}

Eigen::MatrixXd jacobian(const FitProblem& p, const Eigen::VectorXd& theta,
                         long m) {
  const long n = theta.size();
  Eigen::MatrixXd j(m, n);
  for (long k = 0; k < n; ++k) {
    const double h = fd_step(theta[k]);
    Eigen::VectorXd hi = theta, lo = theta;
    hi[k] += h;
    lo[k] -= h;
    j.col(k) = (eval(p, hi, m) - eval(p, lo, m)) / (2.0 * h);
  }
  return j;
}

Eigen::VectorXd clamp_to_bounds(Eigen::VectorXd theta,
                                const std::vector<double>& lower,
                                const std::vector<double>& upper) {
  for (long k = 0; k < theta.size(); ++k) {
    if (!lower.empty()) theta[k] = std::max(theta[k], lower[k]);
    if (!upper.empty()) theta[k] = std::min(theta[k], upper[k]);
  }
  return theta;
}

double scaled_norm(const Eigen::VectorXd& v, const std::vector<double>& scale) {
  double s = 0.0;
  for (long k = 0; k < v.size(); ++k) {
    const double w = scale.empty() ? 1.0 : scale[k];
    s += (v[k] / w) * (v[k] / w);
  }
  return std::sqrt(s);
}

void fill_covariance(FitReport& report, const Eigen::MatrixXd& j, long m,
                     long n) {
  Eigen::MatrixXd h = j.transpose() * j;
  const double dof = static_cast<double>(std::max<long>(m - n, 1));
  const double sigma2 = report.residual_norm * report.residual_norm / dof;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
  Eigen::MatrixXd cov = sigma2 * cod.pseudoInverse();
  cov = 0.5 * (cov + cov.transpose()).eval();
  report.covariance.assign(n, std::vector<double>(n, 0.0));
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) report.covariance[r][c] = cov(r, c);
}

}  // namespace

FitReport least_squares(const FitProblem& problem) {
  const long n = static_cast<long>(problem.initial.size());
  if (n == 0) throw std::invalid_argument("no parameters to fit");
  if (!problem.residual) throw std::invalid_argument("missing residual");
  if (!problem.lower.empty() &&
      static_cast<long>(problem.lower.size()) != n)
    throw std::invalid_argument("lower bound size mismatch");
  if (!problem.upper.empty() &&
      static_cast<long>(problem.upper.size()) != n)
    throw std::invalid_argument("upper bound size mismatch");
  for (long k = 0; k < n; ++k) {
    const double t = problem.initial[k];
    if (!std::isfinite(t))
      throw std::invalid_argument("initial parameter must be finite");
    if (!problem.lower.empty() && t < problem.lower[k])
      throw std::invalid_argument("initial parameter " + std::to_string(k) +
                                  " below its lower bound");
    if (!problem.upper.empty() && t > problem.upper[k])
      throw std::invalid_argument("initial parameter " + std::to_string(k) +
                                  " above its upper bound");
  }

  Eigen::VectorXd theta = to_eigen(problem.initial);
  Eigen::VectorXd r = eval(problem, theta, -1);
  const long m = r.size();
  double rnorm = r.norm();
  const double rnorm0 = rnorm;

  FitReport report;
  report.accepted_norms.push_back(rnorm);

  double damping = kDampingStart;
  Eigen::MatrixXd j;
  bool have_j = false;
  std::string stop_reason = "iteration limit reached";

  while (report.iterations < problem.max_iterations) {
    if (rnorm == 0.0) {
      report.converged = true;
      stop_reason = "residual is zero";
      break;
    }
    if (!have_j) {
      j = jacobian(problem, theta, m);
      have_j = true;
    }
    const Eigen::MatrixXd h = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;

    // Marquardt scaling: damp against diag(H), with dead directions kept
    // solvable by a unit fallback.
    Eigen::VectorXd d = h.diagonal();
    for (long k = 0; k < n; ++k)
      if (d[k] <= 0.0) d[k] = 1.0;

    bool stepped = false;
    while (!stepped) {
      Eigen::MatrixXd a = h;
      a.diagonal() += damping * d;
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
      Eigen::VectorXd delta;
      bool solvable = ldlt.info() == Eigen::Success;
      if (solvable) {
        delta = ldlt.solve(-g);
        solvable = delta.allFinite();
      }
      if (!solvable) {
        damping *= 10.0;
        if (damping > kDampingLimit) {
          throw std::runtime_error(
              "singular normal equations: damping exceeded 1e12");
        }
        continue;
      }

      const Eigen::VectorXd candidate =
          clamp_to_bounds(theta + delta, problem.lower, problem.upper);
      const Eigen::VectorXd r_new = eval(problem, candidate, m);
      const double rnorm_new = r_new.norm();
      if (rnorm_new <= rnorm) {
        const double rel_decrease = (rnorm - rnorm_new) / rnorm;
        const double rel_step = scaled_norm(candidate - theta, problem.scale) /
                                std::max(scaled_norm(theta, problem.scale),
                                         1e-300);
        theta = candidate;
        r = r_new;
        rnorm = rnorm_new;
        have_j = false;
        damping = std::max(damping / 10.0, 1e-15);
        ++report.iterations;
        report.accepted_norms.push_back(rnorm);
        stepped = true;
        if (rel_decrease < kRelTol || rel_step < kRelTol ||
            rnorm <= kResidualFloorRel * rnorm0) {
          report.converged = true;
          stop_reason = "converged";
        }
      } else {
        damping *= 10.0;
        if (damping > kDampingLimit) {
          stop_reason = "no descent step found within damping limit";
          report.converged = false;
          goto done;
        }
      }
    }
    if (report.converged) break;
  }
done:
  report.params = to_std(theta);
  report.residual_norm = rnorm;
  report.message = stop_reason;
  if (!have_j) j = jacobian(problem, theta, m);
  fill_covariance(report, j, m, n);
  report.at_lower_bound.assign(n, false);
  report.at_upper_bound.assign(n, false);
  for (long k = 0; k < n; ++k) {
    const double tol = 1e-12 * std::max(1.0, std::abs(theta[k]));
    if (!problem.lower.empty() &&
        std::abs(theta[k] - problem.lower[k]) <= tol)
      report.at_lower_bound[k] = true;
    if (!problem.upper.empty() &&
        std::abs(theta[k] - problem.upper[k]) <= tol)
      report.at_upper_bound[k] = true;
  }
  return report;
}

BetFitResult fit_bet(const std::vector<IsothermPoint>& isotherm,
                     double range_lo, double range_hi) {
  if (!(range_lo < range_hi)) {
    throw std::invalid_argument("empty fit range");
  }
  std::vector<double> xs, ys;
  for (const IsothermPoint& pt : isotherm) {
    if (pt.p_over_p0 < range_lo || pt.p_over_p0 > range_hi) continue;
    if (!std::isfinite(pt.p_over_p0) || pt.p_over_p0 <= 0.0 ||
        pt.p_over_p0 >= 1.0 || !std::isfinite(pt.amount) ||
        pt.amount <= 0.0) {
      throw std::invalid_argument(
          "isotherm points inside the fit range need 0 < p/p0 < 1 and a "
          "positive amount");
    }
    xs.push_back(pt.p_over_p0);
    ys.push_back(bet_linear_point(RelHumidity::from_fraction(pt.p_over_p0),
                                  pt.amount));
  }
  const int npts = static_cast<int>(xs.size());
  if (npts < 3) {
    throw std::invalid_argument(
        "BET fit needs at least 3 points inside the range, found " +
        std::to_string(npts));
  }

  double x_mean = 0.0, y_mean = 0.0;
  for (int i = 0; i < npts; ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= npts;
  y_mean /= npts;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double dx = xs[i] - x_mean;
    const double dy = ys[i] - y_mean;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("all transform abscissae coincide");
  }
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;
  if (intercept <= 0.0) {
    throw std::invalid_argument(
        "non-physical fit: transform intercept is not positive");
  }
  if (slope + intercept <= 0.0) {
    throw std::invalid_argument(
        "non-physical fit: implied monolayer amount is not positive");
  }

  BetFitResult out;
  out.v_m = 1.0 / (slope + intercept);
  out.c = slope / intercept + 1.0;
  double ss_res = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    ss_res += e * e;
  }
  out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  out.monolayer_x = 1.0 / (1.0 + std::sqrt(out.c));
  out.points_used = npts;
  return out;
}

}  // namespace aaotwin
