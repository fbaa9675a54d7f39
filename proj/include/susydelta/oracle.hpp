#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "susydelta/model.hpp"
#include "susydelta/numerics.hpp"
#include "susydelta/scattering.hpp"

namespace susydelta {

/// Plane-wave transfer matrix: (C, D) on the right = M (A, B) on the left for
/// psi = A e^{ikx} + B e^{-ikx} (left) and C e^{ipx} + D e^{-ipx} (right).
struct TransferMatrix {
  Eigen::Matrix2cd entries = Eigen::Matrix2cd::Identity();
  double energy = 0.0;
  cdouble k_left, k_right;
  std::vector<std::string> warnings;

  cdouble determinant() const { return entries.determinant(); }
  /// |det M - k_left/k_right|
  double determinant_defect() const;
};

/// (psi, psi') propagation across a zone of constant floor.
Eigen::Matrix2d zone_propagator(double E, double floor, double width);
/// (psi, psi') across a delta of the given strength.
Eigen::Matrix2d delta_jump(double strength);
/// Product of jumps and zone propagators from just left of the first boundary to just right
/// of the last one.
Eigen::Matrix2d real_space_transfer(const PotentialSpec& v, double E,
                                    std::vector<std::string>* warnings = nullptr);
/// 2x2 plane-wave basis matrix [[e^{ikx}, e^{-ikx}], [ik e^{ikx}, -ik e^{-ikx}]].
Eigen::Matrix2cd plane_wave_basis(cdouble k, double x);

TransferMatrix transfer_matrix(const PotentialSpec& v, double E);
ScatteringAmplitudes oracle_amplitudes(const PotentialSpec& v, double E);

/// Coefficient of the growing exponential at +infinity for the solution that decays at
/// -infinity, in log-scaled form. Its zeros are the bound states.
struct BoundCoefficient {
  double scaled = 0.0;     // sign-carrying value with the accumulated magnitude divided out
  double log_scale = 0.0;  // log of the divided magnitude
};
BoundCoefficient bound_state_coefficient(const PotentialSpec& v, double E);

/// Default window: [min floor - (sum |strengths|)^2, min outer floor).
std::vector<double> oracle_bound_states(const PotentialSpec& v, const ScanOptions& opt = {},
                                        std::optional<double> e_lo = std::nullopt);

/// (1/2) tr of the (psi, psi') monodromy over one period of a periodic potential.
double monodromy_half_trace(const PotentialSpec& periodic, double E);
/// Half-trace for the alternating comb cell at E = k^2 + alpha^2/4.
double oracle_dispersion(double alpha, double a, double k);

}  // namespace susydelta
