#pragma once

#include <vector>

#include "aaotwin/fit.hpp"

namespace aaotwin {

// One log-normal mode of the pore-size distribution, by volume.
struct PoreMode {
  double weight;
  double median_radius_nm;
  double sigma_log;
};

// Bimodal (or general mixture) pore-size distribution plus the total
// porosity of the oxide. Mode weights must sum to 1 within 1e-12 and the
// porosity must lie strictly inside (0, 1).
struct PoreDistribution {
  std::vector<PoreMode> modes;
  double porosity;
};

PoreDistribution make_pore_distribution(std::vector<PoreMode> modes,
                                        double porosity);

// Anodic alumina as grown: a micropore mode in the cell walls and a mesopore
// mode from the columnar channels, equal volume shares.
PoreDistribution default_alumina_distribution();

// Fraction of pore volume in radii <= r_nm.
double volume_cdf(const PoreDistribution& dist, double r_nm);

// Mean of min(1, t_nm / r) over pore volume restricted to r > cutoff_nm;
// zero when the restriction is empty. Closed form via log-normal partial
// moments. This is the volume share a conformal film of thickness t_nm
// occupies in the pores that are not flooded.
double film_volume_fraction_above(const PoreDistribution& dist,
                                  double cutoff_nm, double t_nm);

// Small-angle scattering curve; q in 1/Angstrom, strictly increasing, at
// least 5 points for fitting.
struct ScatteringPoint {
  double q_inv_angstrom;
  double intensity;
};

struct ScatteringCurve {
  std::vector<ScatteringPoint> points;
};

ScatteringCurve make_scattering_curve(std::vector<ScatteringPoint> points);

struct LorentzianParams {
  double i0;        // forward-scattered intensity
  double radius_a;  // correlation radius in Angstrom
};

// I(q) = I(0) / (1 + r^2 q^2).
double lorentzian_intensity(double q_inv_angstrom,
                            const LorentzianParams& params);

// Least-squares Lorentzian fit through the shared damped engine. A
// non-converged report or a radius pinned at the lower bound is returned as
// a diagnostic rather than a radius claim.
FitReport fit_lorentzian(const ScatteringCurve& curve,
                         const LorentzianParams& initial);

}  // namespace aaotwin
