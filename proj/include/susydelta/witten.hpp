#pragma once

#include <functional>
#include <span>
#include <vector>

#include "susydelta/model.hpp"

namespace susydelta {

/// (v/pi) / (k^2 + v^2): difference of the bosonic and fermionic continuum densities,
/// spread over k in R.
double density_difference(double v, double k);

/// Total phase shift (1/2) arg det S of a configuration with v_+ = v_-, unwrapped in k from a
/// large-k anchor where it is close to 0. Throws unsupported_configuration otherwise.
double phase_shift_total(const ConfigKind& kind, Sector s, double k);
/// Same along a grid of positive momenta, sharing one anchor. Output follows the input order.
std::vector<double> phase_shift_curve(const ConfigKind& kind, Sector s, std::span<const double> ks);

/// (1/2pi) d(delta_0 - delta_1)/dk by central differences of the unwrapped phases.
double density_difference_numeric(const ConfigKind& kind, double k, double h = 1e-4);

struct ContinuumTerm {
  double value = 0.0;
  double cutoff = 0.0;
  double tail_bound = 0.0;
  double quadrature_error = 0.0;
};

/// Integral over |k| <= K of density_difference(v, k) e^{-t(k^2+v^2)}, K chosen so the
/// neglected tail is below tail_tol.
ContinuumTerm continuum_term(double v, double t, double tail_tol = 1e-11);
/// sign(v) (1 - erf(|v| sqrt t))
double continuum_term_closed_form(double v, double t);

struct IndexValue {
  double t = 0.0;
  double value = 0.0;
  double closed_form = 0.0;
};

struct WittenReport {
  int z0 = 0;
  int z1 = 0;
  double v = 0.0;
  bool symmetric_thresholds = true;
  /// false when no heat-kernel continuum term applies (asymmetric thresholds, periodic W)
  bool continuum_regularized = true;
  std::vector<IndexValue> continuum;
  double extrapolated_continuum = 0.0;
  /// z0 - z1 plus the extrapolated continuum term when regularized
  double extrapolated_index = 0.0;
  int zero_mode_index = 0;
  bool susy_broken = false;
  std::function<double(double)> density_difference;
};

/// t_values positive and decreasing, ideally geometric.
WittenReport witten_index(const ConfigKind& kind, std::span<const double> t_values);

}  // namespace susydelta
