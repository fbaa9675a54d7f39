#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "susydelta/core.hpp"
#include "susydelta/model.hpp"

namespace susydelta {

/// sigma_r/rho_r: wave incident from the left (momentum k_minus),
/// sigma_l/rho_l: wave incident from the right (momentum k_plus).
struct ScatteringAmplitudes {
  cdouble sigma_r, rho_r, sigma_l, rho_l;
  cdouble k_minus, k_plus;
  double energy = 0.0;
  Sector sector = Sector::bosonic;

  bool channels_open() const;
  /// max deviation of the two flux identities; NaN unless both channels are open
  double flux_residual() const;
};

/// A closed-form denominator together with the magnitude of its largest terms.
struct Denominator {
  cdouble value;
  double scale = 1.0;
  double relative() const { return std::abs(value) / scale; }
};

struct ZoneFloors {
  double left = 0.0;
  double middle = 0.0;
  double right = 0.0;
};

/// |Delta| below this fraction of its scale is treated as a pole on the real axis
inline constexpr double kPoleTolerance = 1e-13;

// Single delta of strength mu on a step. No sector flip: pass (-1)^s mu.
Denominator delta_step_denominator(double mu, double floor_left, double floor_right, double E);
ScatteringAmplitudes delta_step_amplitudes(double mu, double floor_left, double floor_right, double E);

// Deltas (-1)^s alpha at -a and (-1)^s beta at +a.
Denominator double_delta_denominator(double alpha, double beta, double a, const ZoneFloors& floors,
                                     double E, Sector s);
ScatteringAmplitudes double_delta_amplitudes(double alpha, double beta, double a,
                                             const ZoneFloors& floors, double E, Sector s);

// Deltas (-1)^s (alpha, mu, beta) at (-a, 0, a) with the quasi-square-well floors
// (alpha + mu/2)^2, mu^2/4, mu^2/4, (beta + mu/2)^2.
Denominator triple_delta_denominator(double alpha, double mu, double beta, double a, double E, Sector s);
ScatteringAmplitudes triple_delta_amplitudes(double alpha, double mu, double beta, double a, double E,
                                             Sector s);

/// Flux-normalized S = [[sqrt(k+/k-) sigma_r, rho_l], [rho_r, sqrt(k-/k+) sigma_l]].
struct SMatrix {
  Eigen::Matrix2cd entries = Eigen::Matrix2cd::Identity();
  Eigen::Vector2cd eigenvalues = Eigen::Vector2cd::Ones();
  double delta_plus = 0.0;
  double delta_minus = 0.0;

  double unitarity_defect() const;
  /// (1/2) arg det S, principal branch
  double total_phase() const;
};

/// Closed-form S-matrix of the equal-strength alternating triple, E = k^2 + alpha^2/4.
SMatrix triple_alternating_s_matrix(double alpha, double a, double k, Sector s);
Denominator triple_alternating_denominator(double alpha, double a, cdouble k, Sector s);

/// Sector-1 amplitudes from sector-0 ones via the tail values of W.
ScatteringAmplitudes susy_map_amplitudes(const ScatteringAmplitudes& amps0, double v_minus, double v_plus);

SMatrix s_matrix(const ScatteringAmplitudes& amps);

/// Closed-form amplitudes for any configuration with a finite closed form.
ScatteringAmplitudes amplitudes(const ConfigKind& kind, Sector s, double E);
/// Denominator whose zeros at k = i kappa are the bound states of the closed form.
Denominator scattering_denominator(const ConfigKind& kind, Sector s, double E);

/// S-matrices along an increasing energy grid with eigenphases unwrapped in steps of pi
/// and eigenvalue labels followed by continuity.
std::vector<SMatrix> s_matrix_curve(const ConfigKind& kind, Sector s, std::span<const double> energies);

}  // namespace susydelta
