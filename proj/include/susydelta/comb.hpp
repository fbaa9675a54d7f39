#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "susydelta/core.hpp"
#include "susydelta/model.hpp"

namespace susydelta {

// Infinite alternating comb with cell [0, 2a]. In the cell E = k^2 + alpha^2/4 and the
// quasimomentum q obeys cos 2qa = g(k).

/// g(k) = ((4k^2 + alpha^2) cos 2ka - alpha^2) / (4k^2), with the k -> 0 limit 1 - a^2 alpha^2 / 2.
double dispersion_g(double k, double alpha, double a);
/// Same expression for complex k; k = i kappa gives the evanescent branch.
cdouble dispersion_g(cdouble k, double alpha, double a);
/// ((4 kappa^2 - alpha^2) cosh 2 kappa a + alpha^2) / (4 kappa^2), i.e. g(i kappa).
double dispersion_g_hyperbolic(double kappa, double alpha, double a);

struct Band {
  bool propagating = true;
  /// k interval for propagating bands, kappa interval for the non-propagating one
  double lo = 0.0;
  double hi = 0.0;
  double energy_lo = 0.0;
  double energy_hi = 0.0;
  /// quasimomenta at the two ends, in [0, pi/2a]
  double q_lo = 0.0;
  double q_hi = 0.0;
  /// false when the end is the scan limit or k -> 0 rather than a g = +-1 edge
  bool lower_is_edge = true;
  bool upper_is_edge = true;
};

/// Maximal k intervals in (0, k_max] with |g| <= 1. The sector only enters through alpha -> -alpha,
/// which leaves g unchanged.
std::vector<Band> propagating_bands(double alpha, double a, double k_max, Sector s = Sector::bosonic,
                                    int threads = 1);
/// Scan step used by propagating_bands.
double band_scan_step(double alpha, double a);

struct KappaSolution {
  double q = 0.0;
  double kappa = 0.0;
  bool accepted = true;
};

struct NonpropagatingResult {
  std::optional<Band> band;
  std::vector<KappaSolution> solutions;
  std::optional<double> upper_edge_kappa;
  double a_critical = 0.0;
};

/// kappa > 0 with g(i kappa) = -1, present iff a > 2/alpha.
std::optional<double> upper_edge_kappa(double alpha, double a);
NonpropagatingResult nonpropagating_band(double alpha, double a, int q_samples = 101, int threads = 1);

/// 4 sin^2(a q) - alpha^2 a^2. Diagnostic only.
double curvature_mismatch(double alpha, double a, double q);

/// psi = A e^{ikx} + B e^{-ikx} on (0, a), C e^{ikx} + D e^{-ikx} on (a, 2a),
/// psi(x + 2a) = e^{2iqa} psi(x).
struct BlochState {
  double q = 0.0;
  cdouble momentum;
  Sector sector = Sector::bosonic;
  double alpha = 0.0;
  double a = 0.0;
  Eigen::Vector4cd coefficients = Eigen::Vector4cd::Zero();
  /// max |row| of the homogeneous system at the returned coefficients
  double residual = 0.0;

  cdouble operator()(double x) const;
  cdouble derivative(double x) const;
};

/// The 4x4 matching system for the cell; rows are continuity and jump at a, then the Bloch
/// continuity and jump at 2a.
Eigen::Matrix4cd bloch_system(double q, cdouble k, Sector s, double alpha, double a);
/// Throws invalid_state when |cos 2qa - g(k)| > 1e-10.
BlochState bloch_wavefunction(double q, cdouble momentum, Sector s, double alpha, double a);

struct CombZeroModes {
  ZeroMode bosonic;
  ZeroMode fermionic;
  /// max over both of |psi(2a) - psi(0)|
  double bloch_defect = 0.0;
  int zero_modes_bosonic = 1;
  int zero_modes_fermionic = 1;
  int index_contribution = 0;
  bool susy_unbroken = true;
};

CombZeroModes comb_zero_modes(double alpha, double a);

}  // namespace susydelta
