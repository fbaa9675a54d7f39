#include "susydelta/comb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "susydelta/numerics.hpp"

namespace susydelta {

namespace {

constexpr cdouble I{0.0, 1.0};

double sin_over(double x, double k) { return k == 0.0 ? x / 1.0 : std::sin(k * x) / k; }
double sinh_over(double x, double k) { return k == 0.0 ? x / 1.0 : std::sinh(k * x) / k; }

}  // namespace

// cos 2ka - (alpha^2/2) (sin ka / k)^2 is the same expression without the 1/k^2 cancellation
double dispersion_g(double k, double alpha, double a) {
  double s = sin_over(a, k);
  return std::cos(2 * k * a) - 0.5 * alpha * alpha * s * s;
}

cdouble dispersion_g(cdouble k, double alpha, double a) {
  cdouble s = std::abs(k) == 0.0 ? cdouble(a) : std::sin(k * a) / k;
  return std::cos(2.0 * k * a) - 0.5 * alpha * alpha * s * s;
}

double dispersion_g_hyperbolic(double kappa, double alpha, double a) {
  double s = sinh_over(a, kappa);
  return std::cosh(2 * kappa * a) - 0.5 * alpha * alpha * s * s;
}

double band_scan_step(double alpha, double a) {
  double h = std::numbers::pi / (20 * a);
  if (alpha != 0.0) h = std::min(h, std::abs(alpha) / 50);
  return h;
}

std::vector<Band> propagating_bands(double alpha, double a, double k_max, Sector s, int threads) {
  if (!(a > 0) || !(k_max > 0)) throw Error(Errc::invalid_configuration, "propagating_bands: a and k_max must be positive");
  // the sector flips the sign of alpha, which g does not see
  const double al = sector_sign(s) * alpha;
  const double h = band_scan_step(al, a);
  const auto n = static_cast<std::size_t>(std::ceil(k_max / h));
  auto ks = parallel_map<double>(n + 1, 1, [&](std::size_t i) { return std::min(k_max, i * h); });
  auto gs = parallel_map<double>(n + 1, threads, [&](std::size_t i) { return dispersion_g(ks[i], al, a); });
  auto allowed = [&](std::size_t i) { return std::abs(gs[i]) <= 1.0; };
  auto g = [&](double k) { return dispersion_g(k, al, a); };
  auto edge = [&](std::size_t inside, std::size_t outside) {
    double target = gs[outside] > 1.0 ? 1.0 : -1.0;
    return bisect([&](double k) { return g(k) - target; }, std::min(ks[inside], ks[outside]),
                  std::max(ks[inside], ks[outside]), 0.0);
  };
  auto qof = [&](double k) { return std::acos(std::clamp(g(k), -1.0, 1.0)) / (2 * a); };

  std::vector<Band> out;
  std::optional<Band> cur;
  for (std::size_t i = 0; i <= n; ++i) {
    if (allowed(i) && !cur) {
      Band b;
      if (i == 0) {
        b.lo = 0.0;
        b.lower_is_edge = false;
      } else {
        b.lo = edge(i, i - 1);
      }
      cur = b;
    }
    if (cur && (!allowed(i) || i == n)) {
      Band b = *cur;
      if (!allowed(i)) {
        b.hi = edge(i - 1, i);
      } else {
        b.hi = ks[i];
        b.upper_is_edge = false;
      }
      b.propagating = true;
      b.energy_lo = b.lo * b.lo + al * al / 4;
      b.energy_hi = b.hi * b.hi + al * al / 4;
      b.q_lo = qof(b.lo);
      b.q_hi = qof(b.hi);
      out.push_back(b);
      cur.reset();
    }
  }
  return out;
}

std::optional<double> upper_edge_kappa(double alpha, double a) {
  double g0 = dispersion_g_hyperbolic(0.0, alpha, a);
  if (std::abs(g0 + 1.0) <= 1e-14) return 0.0;
  if (g0 > -1.0) return std::nullopt;
  return bisect([&](double k) { return dispersion_g_hyperbolic(k, alpha, a) + 1.0; }, 0.0, std::abs(alpha) / 2, 0.0);
}

NonpropagatingResult nonpropagating_band(double alpha, double a, int q_samples, int threads) {
  if (!(a > 0)) throw Error(Errc::invalid_configuration, "nonpropagating_band: a must be positive");
  NonpropagatingResult out;
  const double al = std::abs(alpha);
  out.a_critical = al > 0 ? 2.0 / al : std::numeric_limits<double>::infinity();
  if (al == 0.0) return out;
  out.upper_edge_kappa = upper_edge_kappa(al, a);

  const double qmax = std::numbers::pi / (2 * a);
  const int nq = std::max(2, q_samples);
  auto per_q = parallel_map<std::vector<KappaSolution>>(nq, threads, [&](std::size_t j) {
    double q = -qmax + 2 * qmax * static_cast<double>(j) / (nq - 1);
    std::vector<KappaSolution> sols;
    if (std::abs(q) < 1e-15) {
      // (4 kappa^2 - alpha^2)(cosh 2 kappa a - 1) = 0
      sols.push_back({0.0, al / 2, true});
      sols.push_back({0.0, -al / 2, false});
      return sols;
    }
    double target = std::cos(2 * q * a);
    std::vector<double> roots;
    if (j == 0 || j + 1 == static_cast<std::size_t>(nq)) {
      if (out.upper_edge_kappa && *out.upper_edge_kappa > 0) roots.push_back(*out.upper_edge_kappa);
    } else {
      ScanOptions so;
      so.samples = 400;
      roots = scan_roots([&](double k) { return dispersion_g_hyperbolic(k, al, a) - target; }, 0.0, al / 2 + 5 / a,
                         so);
    }
    for (double r : roots) {
      if (r <= 0) continue;
      sols.push_back({q, r, true});
      sols.push_back({q, -r, false});
    }
    return sols;
  });
  for (auto& v : per_q) out.solutions.insert(out.solutions.end(), v.begin(), v.end());

  Band b;
  b.propagating = false;
  b.hi = al / 2;
  b.lo = out.upper_edge_kappa.value_or(0.0);
  b.upper_is_edge = out.upper_edge_kappa.has_value();
  b.energy_lo = al * al / 4 - b.hi * b.hi;
  b.energy_hi = al * al / 4 - b.lo * b.lo;
  b.q_lo = 0.0;
  b.q_hi = b.upper_is_edge ? qmax : std::acos(std::clamp(1 - a * a * al * al / 2, -1.0, 1.0)) / (2 * a);
  if (b.hi - b.lo > 1e-12) out.band = b;
  return out;
}

double curvature_mismatch(double alpha, double a, double q) {
  double s = std::sin(a * q);
  return 4 * s * s - alpha * alpha * a * a;
}

Eigen::Matrix4cd bloch_system(double q, cdouble k, Sector s, double alpha, double a) {
  const double sg = sector_sign(s);
  const double lam_a = -sg * alpha, lam_0 = sg * alpha;
  const cdouble e1 = std::exp(I * k * a), em1 = std::exp(-I * k * a);
  const cdouble e2 = e1 * e1, em2 = em1 * em1;
  const cdouble phi = std::exp(2.0 * I * q * a);
  const cdouble ik = I * k;
  Eigen::Matrix4cd m;
  m << e1, em1, -e1, -em1,
      (-ik - lam_a) * e1, (ik - lam_a) * em1, ik * e1, -ik * em1,
      -phi, -phi, e2, em2,
      phi * ik, -phi * ik, (-ik - lam_0) * e2, (ik - lam_0) * em2;
  return m;
}

BlochState bloch_wavefunction(double q, cdouble momentum, Sector s, double alpha, double a) {
  if (std::abs(momentum) == 0.0) throw Error(Errc::invalid_state, "bloch_wavefunction: zero momentum");
  cdouble g = dispersion_g(momentum, alpha, a);
  double mismatch = std::abs(std::cos(2 * q * a) - g);
  if (!(mismatch <= 1e-10))
    throw Error(Errc::invalid_state, "bloch_wavefunction: (q, k) violates the dispersion relation by " +
                                         std::to_string(mismatch));
  if (momentum.imag() == 0.0 && momentum.real() == q) q += 1e-12;

  Eigen::Matrix4cd m = bloch_system(q, momentum, s, alpha, a);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m, Eigen::ComputeFullV);
  Eigen::Vector4cd v = svd.matrixV().col(3);
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v /= std::abs(v(0)) > 1e-8 * v.norm() ? v(0) : v(big);

  BlochState st;
  st.q = q;
  st.momentum = momentum;
  st.sector = s;
  st.alpha = alpha;
  st.a = a;
  st.coefficients = v;
  st.residual = (m * v).cwiseAbs().maxCoeff();
  return st;
}

cdouble BlochState::operator()(double x) const {
  double cell = std::floor(x / (2 * a));
  double y = x - 2 * a * cell;
  cdouble phase = std::exp(2.0 * I * q * a * cell);
  const auto& c = coefficients;
  cdouble ep = std::exp(I * momentum * y), em = std::exp(-I * momentum * y);
  return phase * (y < a ? c(0) * ep + c(1) * em : c(2) * ep + c(3) * em);
}

cdouble BlochState::derivative(double x) const {
  double cell = std::floor(x / (2 * a));
  double y = x - 2 * a * cell;
  cdouble phase = std::exp(2.0 * I * q * a * cell);
  const auto& c = coefficients;
  cdouble ep = std::exp(I * momentum * y), em = std::exp(-I * momentum * y);
  cdouble ik = I * momentum;
  return phase * ik * (y < a ? c(0) * ep - c(1) * em : c(2) * ep - c(3) * em);
}

CombZeroModes comb_zero_modes(double alpha, double a) {
  Superpotential w = build_superpotential(AlternatingComb{alpha, a});
  CombZeroModes out;
  out.bosonic = zero_mode(w, Sector::bosonic);
  out.fermionic = zero_mode(w, Sector::fermionic);
  out.bloch_defect = std::max(std::abs(out.bosonic(2 * a) - out.bosonic(0.0)),
                              std::abs(out.fermionic(2 * a) - out.fermionic(0.0)));
  out.index_contribution = out.zero_modes_bosonic - out.zero_modes_fermionic;
  out.susy_unbroken = out.zero_modes_bosonic + out.zero_modes_fermionic > 0;
  return out;
}

}  // namespace susydelta
