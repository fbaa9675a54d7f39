#include "susydelta/witten.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "susydelta/comb.hpp"
#include "susydelta/numerics.hpp"
#include "susydelta/scattering.hpp"

namespace susydelta {

namespace {

constexpr double kPi = std::numbers::pi;

double symmetric_threshold(const Superpotential& w, const std::string& who) {
  if (w.period()) throw Error(Errc::unsupported_configuration, who + ": periodic superpotential has no asymptotic channels");
  double vp = w.v_plus(), vm = w.v_minus();
  if (std::abs(vp - vm) > 1e-12 * std::max(1.0, std::abs(vp)))
    throw Error(Errc::unsupported_configuration, who + ": requires v_+ = v_-");
  return vp;
}

// |delta(k)| is at most about strength / (2k); above 4x this bound the principal value is the
// continuous one
double anchor_momentum(const Superpotential& w, double v) {
  double b = 1.0;
  for (double j : w.slope_jumps()) b += std::abs(j);
  const auto& bp = w.breakpoints();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double s = w.slopes()[i + 1];
    b += std::abs(s * s - v * v) * (bp[i + 1] - bp[i]);
  }
  return 4.0 * b;
}

double wrap_half_pi(double d) { return d - kPi * std::round(d / kPi); }

}  // namespace

double density_difference(double v, double k) { return (v / kPi) / (k * k + v * v); }

std::vector<double> phase_shift_curve(const ConfigKind& kind, Sector s, std::span<const double> ks) {
  Superpotential w = build_superpotential(kind);
  const double v = symmetric_threshold(w, "phase_shift_total");
  for (double k : ks)
    if (!(k > 0)) throw Error(Errc::invalid_configuration, "phase_shift_total: k must be positive");
  auto raw = [&](double k) { return s_matrix(amplitudes(kind, s, k * k + v * v)).total_phase(); };

  const auto& bp = w.breakpoints();
  const double length = bp.empty() ? 0.0 : bp.back() - bp.front();
  const double h0 = 0.1 / (1.0 + length);

  std::vector<std::size_t> order(ks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ks[i] > ks[j]; });

  double k = ks.empty() ? 1.0 : std::max(ks[order.front()], anchor_momentum(w, v));
  double phase = raw(k);
  std::vector<double> out(ks.size());
  for (std::size_t idx : order) {
    const double target = ks[idx];
    while (k > target) {
      double h = std::min(h0, k - target);
      for (;;) {
        double d = wrap_half_pi(raw(k - h) - phase);
        if (std::abs(d) <= kPi / 4 || h < 1e-12) {
          phase += d;
          k = h == k - target ? target : k - h;
          break;
        }
        h *= 0.5;
      }
    }
    out[idx] = phase;
  }
  return out;
}

double phase_shift_total(const ConfigKind& kind, Sector s, double k) {
  double ks[] = {k};
  return phase_shift_curve(kind, s, ks).front();
}

double density_difference_numeric(const ConfigKind& kind, double k, double h) {
  double ks[] = {k - h, k + h};
  auto d0 = phase_shift_curve(kind, Sector::bosonic, ks);
  auto d1 = phase_shift_curve(kind, Sector::fermionic, ks);
  return ((d0[1] - d1[1]) - (d0[0] - d1[0])) / (2 * h) / (2 * kPi);
}

ContinuumTerm continuum_term(double v, double t, double tail_tol) {
  ContinuumTerm out;
  if (!(t > 0)) throw Error(Errc::invalid_configuration, "continuum_term: t must be positive");
  if (v == 0.0) return out;
  const double av = std::abs(v);
  auto tail = [&](double K) { return 2 * (av / kPi) * std::exp(-t * (K * K + v * v)) / K; };
  double K = 10 * std::max(av, 1 / std::sqrt(t));
  while (tail(K) >= tail_tol) K *= 2;
  auto f = [&](double k) { return density_difference(av, k) * std::exp(-t * (k * k + v * v)); };
  // the integrand is concentrated on |k| of order v; split there so the adaptive rule
  // does not spend its depth on the flat tail
  double split = std::min(K, 20 * av);
  QuadratureResult a = integrate(f, 0.0, split, 1e-14);
  QuadratureResult b = integrate(f, split, K, 1e-14);
  out.value = std::copysign(2 * (a.value + b.value), v);
  out.cutoff = K;
  out.tail_bound = tail(K);
  out.quadrature_error = 2 * (a.error + b.error);
  return out;
}

double continuum_term_closed_form(double v, double t) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::erfc(std::abs(v) * std::sqrt(t)), v);
}

WittenReport witten_index(const ConfigKind& kind, std::span<const double> t_values) {
  validate(kind);
  WittenReport rep;
  if (const auto* c = std::get_if<AlternatingComb>(&kind)) {
    CombZeroModes zm = comb_zero_modes(c->alpha, c->a);
    rep.z0 = zm.zero_modes_bosonic;
    rep.z1 = zm.zero_modes_fermionic;
    rep.symmetric_thresholds = false;
    rep.continuum_regularized = false;
    rep.zero_mode_index = zm.index_contribution;
    rep.extrapolated_index = zm.index_contribution;
    rep.susy_broken = !zm.susy_unbroken;
    rep.density_difference = [](double) { return 0.0; };
    return rep;
  }

  Superpotential w = build_superpotential(kind);
  rep.z0 = zero_mode(w, Sector::bosonic).normalizable ? 1 : 0;
  rep.z1 = zero_mode(w, Sector::fermionic).normalizable ? 1 : 0;
  rep.zero_mode_index = rep.z0 - rep.z1;
  rep.susy_broken = rep.z0 == 0 && rep.z1 == 0;
  rep.v = w.v_plus();
  rep.symmetric_thresholds = std::abs(w.v_plus() - w.v_minus()) <= 1e-12 * std::max(1.0, std::abs(w.v_plus()));
  if (!rep.symmetric_thresholds) {
    rep.continuum_regularized = false;
    rep.extrapolated_index = rep.zero_mode_index;
    rep.density_difference = [](double) { return 0.0; };
    return rep;
  }

  const double v = rep.v;
  rep.density_difference = [v](double k) { return density_difference(v, k); };
  std::vector<double> h, values;
  for (double t : t_values) {
    if (!(t > 0)) throw Error(Errc::invalid_configuration, "witten_index: t values must be positive");
    ContinuumTerm c = continuum_term(v, t);
    rep.continuum.push_back({t, c.value, continuum_term_closed_form(v, t)});
    h.push_back(std::sqrt(t));
    values.push_back(c.value);
  }
  if (!values.empty()) rep.extrapolated_continuum = values.size() > 1 ? richardson_odd(h, values) : values.back();
  rep.extrapolated_index = rep.zero_mode_index + rep.extrapolated_continuum;
  return rep;
}

}  // namespace susydelta
