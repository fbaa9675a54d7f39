#include "susydelta/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace susydelta {

namespace {

constexpr cdouble I{0.0, 1.0};

struct Interface {
  double position;
  double strength;
  double floor_after;
};

std::vector<Interface> interfaces(const PotentialSpec& v) {
  v.validate();
  std::vector<Interface> out;
  for (std::size_t i = 0; i < v.zone_boundaries.size(); ++i)
    out.push_back({v.zone_boundaries[i], v.strength_at(i), v.floors[i + 1]});
  return out;
}

}  // namespace

double TransferMatrix::determinant_defect() const { return std::abs(determinant() - k_left / k_right); }

Eigen::Matrix2d zone_propagator(double E, double floor, double width) {
  Eigen::Matrix2d m;
  double d = E - floor;
  if (d > 0) {
    double q = std::sqrt(d);
    double c = std::cos(q * width), s = std::sin(q * width);
    m << c, s / q, -q * s, c;
  } else if (d < 0) {
    double kappa = std::sqrt(-d);
    double c = std::cosh(kappa * width), s = std::sinh(kappa * width);
    m << c, s / kappa, kappa * s, c;
  } else {
    m << 1.0, width, 0.0, 1.0;
  }
  return m;
}

Eigen::Matrix2d delta_jump(double strength) {
  Eigen::Matrix2d m;
  m << 1.0, 0.0, strength, 1.0;
  return m;
}

Eigen::Matrix2d real_space_transfer(const PotentialSpec& v, double E, std::vector<std::string>* warnings) {
  auto ifs = interfaces(v);
  Eigen::Matrix2d t = Eigen::Matrix2d::Identity();
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    if (i > 0) {
      double width = ifs[i].position - ifs[i - 1].position;
      if (width == 0.0) {
        if (warnings) warnings->push_back("zero-width zone skipped at x = " + std::to_string(ifs[i].position));
      } else {
        t = zone_propagator(E, ifs[i - 1].floor_after, width) * t;
      }
    }
    if (ifs[i].strength != 0.0) t = delta_jump(ifs[i].strength) * t;
  }
  return t;
}

Eigen::Matrix2cd plane_wave_basis(cdouble k, double x) {
  cdouble ep = std::exp(I * k * x), em = std::exp(-I * k * x);
  Eigen::Matrix2cd m;
  m << ep, em, I * k * ep, -I * k * em;
  return m;
}

TransferMatrix transfer_matrix(const PotentialSpec& v, double E) {
  TransferMatrix out;
  out.energy = E;
  out.k_left = channel_momentum(E, v.floor_left());
  out.k_right = channel_momentum(E, v.floor_right());
  if (out.k_left == 0.0 || out.k_right == 0.0)
    throw Error(Errc::invalid_configuration, "transfer_matrix: energy equals an outer floor");
  Eigen::Matrix2cd t = real_space_transfer(v, E, &out.warnings).cast<cdouble>();
  double x0 = v.zone_boundaries.empty() ? 0.0 : v.zone_boundaries.front();
  double x1 = v.zone_boundaries.empty() ? 0.0 : v.zone_boundaries.back();
  out.entries = plane_wave_basis(out.k_right, x1).inverse() * t * plane_wave_basis(out.k_left, x0);
  return out;
}

ScatteringAmplitudes oracle_amplitudes(const PotentialSpec& v, double E) {
  TransferMatrix tm = transfer_matrix(v, E);
  bool left_open = tm.k_left.imag() == 0.0, right_open = tm.k_right.imag() == 0.0;
  if (!left_open && !right_open)
    throw Error(Errc::no_scattering, "oracle_amplitudes: both asymptotic channels are closed");
  const auto& m = tm.entries;
  ScatteringAmplitudes out;
  out.rho_r = -m(1, 0) / m(1, 1);
  out.sigma_r = tm.determinant() / m(1, 1);
  out.sigma_l = 1.0 / m(1, 1);
  out.rho_l = m(0, 1) / m(1, 1);
  out.k_minus = tm.k_left;
  out.k_plus = tm.k_right;
  out.energy = E;
  return out;
}

BoundCoefficient bound_state_coefficient(const PotentialSpec& v, double E) {
  auto ifs = interfaces(v);
  double kl = std::sqrt(std::max(0.0, v.floor_left() - E));
  double kr = std::sqrt(std::max(0.0, v.floor_right() - E));
  Eigen::Vector2d y(1.0, kl);
  double log_scale = 0.0;
  auto renorm = [&] {
    double n = y.cwiseAbs().maxCoeff();
    if (n > 0) {
      y /= n;
      log_scale += std::log(n);
    }
  };
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    if (i > 0) {
      double width = ifs[i].position - ifs[i - 1].position;
      if (width > 0) y = zone_propagator(E, ifs[i - 1].floor_after, width) * y;
      renorm();
    }
    if (ifs[i].strength != 0.0) y = delta_jump(ifs[i].strength) * y;
  }
  renorm();
  return {kr * y(0) + y(1), log_scale};
}

std::vector<double> oracle_bound_states(const PotentialSpec& v, const ScanOptions& opt, std::optional<double> e_lo) {
  v.validate();
  double hi = std::min(v.floor_left(), v.floor_right());
  double min_floor = *std::min_element(v.floors.begin(), v.floors.end());
  double total = 0.0;
  bool attractive = false;
  for (const auto& d : v.deltas) {
    total += std::abs(d.strength);
    attractive = attractive || d.strength < 0;
  }
  double lo = e_lo.value_or(min_floor - total * total);
  auto f = [&](double E) { return bound_state_coefficient(v, E).scaled; };
  double top = hi - 1e-12 * std::max(1.0, std::abs(hi));
  std::vector<double> roots;
  // separate scans above and below zero so the resolution near zero energy is independent of
  // how deep an attractive array could bind
  if (lo < 0.0 && (attractive || min_floor < 0.0)) {
    auto neg = scan_roots(f, lo, std::min(0.0, top), opt);
    roots.insert(roots.end(), neg.begin(), neg.end());
  }
  if (top > 0.0) {
    auto pos = scan_roots(f, std::max(0.0, lo), top, opt);
    roots.insert(roots.end(), pos.begin(), pos.end());
  }
  return merge_sorted(std::move(roots), opt.merge_tol);
}

double monodromy_half_trace(const PotentialSpec& cell, double E) {
  if (!cell.period) throw Error(Errc::invalid_configuration, "monodromy_half_trace: potential is not periodic");
  auto ifs = interfaces(cell);
  if (ifs.empty()) return zone_propagator(E, cell.floors.front(), *cell.period).trace() / 2;
  // start just left of the first interface and return to the same point one period later
  Eigen::Matrix2d t = Eigen::Matrix2d::Identity();
  for (std::size_t i = 0; i < ifs.size(); ++i) {
    if (ifs[i].strength != 0.0) t = delta_jump(ifs[i].strength) * t;
    double next = i + 1 < ifs.size() ? ifs[i + 1].position : ifs.front().position + *cell.period;
    t = zone_propagator(E, ifs[i].floor_after, next - ifs[i].position) * t;
  }
  return 0.5 * t.trace();
}

double oracle_dispersion(double alpha, double a, double k) {
  PotentialSpec cell = partner_potential(build_superpotential(AlternatingComb{alpha, a}), Sector::bosonic);
  return monodromy_half_trace(cell, k * k + alpha * alpha / 4);
}

}  // namespace susydelta
