#include "susydelta/scattering.hpp"

#include <cmath>
#include <numbers>

#include "susydelta/numerics.hpp"

namespace susydelta {

namespace {

constexpr cdouble I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_open(cdouble k) { return k.imag() == 0.0 && k.real() > 0.0; }

void check_pole(const Denominator& d, const char* where) {
  if (d.relative() < kPoleTolerance)
    throw Error(Errc::pole, std::string(where) + ": energy sits on a pole of the amplitudes");
}

struct DoubleTerms {
  cdouble value;
  double scale;
};

// (k+q+i al)(p+q+i be) - e^{4iaq}(k-q+i al)(p-q+i be)
DoubleTerms double_delta_det(cdouble k, cdouble q, cdouble p, double al, double be, double a) {
  cdouble t1 = (k + q + I * al) * (p + q + I * be);
  cdouble t2 = std::exp(4.0 * I * a * q) * (k - q + I * al) * (p - q + I * be);
  return {t1 - t2, std::abs(t1) + std::abs(t2)};
}

struct TripleMomenta {
  cdouble k, q, p;
};

TripleMomenta triple_momenta(double alpha, double mu, double beta, double E) {
  return {channel_momentum(E, (alpha + mu / 2) * (alpha + mu / 2)), channel_momentum(E, mu * mu / 4),
          channel_momentum(E, (beta + mu / 2) * (beta + mu / 2))};
}

// right determinant with signed strengths al, mu, be
DoubleTerms triple_det(cdouble k, cdouble q, cdouble p, double al, double mu, double be, double a) {
  cdouble t1 = 2.0 * mu * std::exp(I * a * (p + 3.0 * q)) * ((al - I * k) * (p + I * be) + I * q * q);
  cdouble t2 = std::exp(I * a * (p + q)) * (2.0 * q + I * mu) * (k + q + I * al) * (p + q + I * be);
  cdouble t3 = std::exp(I * a * (p + 5.0 * q)) * (2.0 * q - I * mu) * (k - q + I * al) * (-p + q - I * be);
  return {t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
}

struct RightPair {
  cdouble sigma, rho;
};

RightPair triple_right(cdouble k, cdouble q, cdouble p, double al, double mu, double be, double a,
                       cdouble det) {
  cdouble sigma = 8.0 * k * q * q * std::exp(-I * a * (k - 3.0 * q)) / det;
  cdouble rho = std::exp(-2.0 * I * a * k) * (k + q - I * al) / (k - q + I * al) -
                4.0 * k * q * std::exp(I * a * (p + q - 2.0 * k)) / ((k - q + I * al) * det) *
                    (mu * std::exp(2.0 * I * a * q) * (be - I * p + I * q) +
                     (2.0 * q + I * mu) * (I * be + p + q));
  return {sigma, rho};
}

}  // namespace

bool ScatteringAmplitudes::channels_open() const { return is_open(k_minus) && is_open(k_plus); }

double ScatteringAmplitudes::flux_residual() const {
  if (!channels_open()) return NAN;
  double km = k_minus.real(), kp = k_plus.real();
  double r = std::abs(kp / km * std::norm(sigma_r) + std::norm(rho_r) - 1.0);
  double l = std::abs(km / kp * std::norm(sigma_l) + std::norm(rho_l) - 1.0);
  return std::max(r, l);
}

Denominator delta_step_denominator(double mu, double floor_left, double floor_right, double E) {
  cdouble k = channel_momentum(E, floor_left);
  cdouble p = channel_momentum(E, floor_right);
  return {k + p + I * mu, std::abs(k) + std::abs(p) + std::abs(mu)};
}

ScatteringAmplitudes delta_step_amplitudes(double mu, double floor_left, double floor_right, double E) {
  cdouble k = channel_momentum(E, floor_left);
  cdouble p = channel_momentum(E, floor_right);
  Denominator d = delta_step_denominator(mu, floor_left, floor_right, E);
  check_pole(d, "delta_step_amplitudes");
  ScatteringAmplitudes out;
  out.sigma_r = 2.0 * k / d.value;
  out.rho_r = (k - p - I * mu) / d.value;
  out.sigma_l = 2.0 * p / d.value;
  out.rho_l = (-k + p - I * mu) / d.value;
  out.k_minus = k;
  out.k_plus = p;
  out.energy = E;
  return out;
}

Denominator double_delta_denominator(double alpha, double beta, double a, const ZoneFloors& floors,
                                     double E, Sector s) {
  double sg = sector_sign(s);
  auto t = double_delta_det(channel_momentum(E, floors.left), channel_momentum(E, floors.middle),
                            channel_momentum(E, floors.right), sg * alpha, sg * beta, a);
  return {t.value, t.scale};
}

ScatteringAmplitudes double_delta_amplitudes(double alpha, double beta, double a,
                                             const ZoneFloors& floors, double E, Sector s) {
  double sg = sector_sign(s);
  double al = sg * alpha, be = sg * beta;
  cdouble k = channel_momentum(E, floors.left);
  cdouble q = channel_momentum(E, floors.middle);
  cdouble p = channel_momentum(E, floors.right);
  auto d = double_delta_det(k, q, p, al, be, a);
  check_pole({d.value, d.scale}, "double_delta_amplitudes");
  cdouble e4 = std::exp(4.0 * I * a * q);
  cdouble phase = std::exp(-I * a * (k + p - 2.0 * q));

  ScatteringAmplitudes out;
  out.sigma_r = 4.0 * k * q * phase / d.value;
  out.rho_r = std::exp(-2.0 * I * a * k) *
              (e4 * (k + q - I * al) * (-p + q - I * be) + (k - q - I * al) * (p + q + I * be)) / d.value;
  // mirror image: alpha <-> beta, k <-> p; the determinant is symmetric under the swap
  out.sigma_l = 4.0 * p * q * phase / d.value;
  out.rho_l = std::exp(-2.0 * I * a * p) *
              (e4 * (p + q - I * be) * (-k + q - I * al) + (p - q - I * be) * (k + q + I * al)) / d.value;
  out.k_minus = k;
  out.k_plus = p;
  out.energy = E;
  out.sector = s;
  return out;
}

Denominator triple_delta_denominator(double alpha, double mu, double beta, double a, double E, Sector s) {
  double sg = sector_sign(s);
  auto m = triple_momenta(alpha, mu, beta, E);
  auto t = triple_det(m.k, m.q, m.p, sg * alpha, sg * mu, sg * beta, a);
  return {t.value, t.scale};
}

ScatteringAmplitudes triple_delta_amplitudes(double alpha, double mu, double beta, double a, double E,
                                             Sector s) {
  double sg = sector_sign(s);
  double al = sg * alpha, m = sg * mu, be = sg * beta;
  auto mom = triple_momenta(alpha, mu, beta, E);
  auto dr = triple_det(mom.k, mom.q, mom.p, al, m, be, a);
  check_pole({dr.value, dr.scale}, "triple_delta_amplitudes");
  auto dl = triple_det(mom.p, mom.q, mom.k, be, m, al, a);
  auto right = triple_right(mom.k, mom.q, mom.p, al, m, be, a, dr.value);
  auto left = triple_right(mom.p, mom.q, mom.k, be, m, al, a, dl.value);
  ScatteringAmplitudes out;
  out.sigma_r = right.sigma;
  out.rho_r = right.rho;
  out.sigma_l = left.sigma;
  out.rho_l = left.rho;
  out.k_minus = mom.k;
  out.k_plus = mom.p;
  out.energy = E;
  out.sector = s;
  return out;
}

Denominator triple_alternating_denominator(double alpha, double a, cdouble k, Sector s) {
  cdouble f1 = 2.0 * I * k + sector_sign(s) * alpha;
  cdouble e = std::exp(2.0 * I * a * k) - 1.0;
  cdouble f2 = 4.0 * k * k + e * e * alpha * alpha;
  double scale = (2.0 * std::abs(k) + std::abs(alpha)) * (4.0 * std::norm(k) + std::norm(e) * alpha * alpha);
  return {f1 * f2, scale};
}

SMatrix triple_alternating_s_matrix(double alpha, double a, double k, Sector s) {
  Denominator d = triple_alternating_denominator(alpha, a, k, s);
  check_pole(d, "triple_alternating_s_matrix");
  cdouble sigma = 8.0 * I * k * k * k / d.value;
  double sgn = s == Sector::bosonic ? -1.0 : 1.0;
  cdouble rho = sgn * 2.0 * alpha *
                ((4.0 * k * k + alpha * alpha) * std::cos(2.0 * k * a) - alpha * alpha - 2.0 * k * k) / d.value;
  ScatteringAmplitudes amps;
  amps.sigma_r = amps.sigma_l = sigma;
  amps.rho_r = amps.rho_l = rho;
  amps.k_minus = amps.k_plus = k;
  amps.energy = k * k + alpha * alpha / 4;
  amps.sector = s;
  return s_matrix(amps);
}

ScatteringAmplitudes susy_map_amplitudes(const ScatteringAmplitudes& a0, double v_minus, double v_plus) {
  if (a0.sector != Sector::bosonic)
    throw Error(Errc::invalid_configuration, "susy_map_amplitudes expects sector-0 amplitudes");
  cdouble km = a0.k_minus, kp = a0.k_plus;
  cdouble dm = I * km + v_minus;
  cdouble dp = I * kp + v_plus;
  double scale = std::abs(km) + std::abs(kp) + std::abs(v_minus) + std::abs(v_plus);
  if (std::abs(dm) <= 1e-14 * scale || std::abs(dp) <= 1e-14 * scale)
    throw Error(Errc::map_singular, "susy_map_amplitudes: i k + v vanishes (threshold)");
  ScatteringAmplitudes out = a0;
  out.sector = Sector::fermionic;
  out.sigma_r = (I * kp - v_plus) / dm * a0.sigma_r;
  out.rho_r = -(I * km - v_minus) / dm * a0.rho_r;
  out.sigma_l = (I * km - v_minus) / dp * a0.sigma_l;
  out.rho_l = -(I * kp - v_plus) / dp * a0.rho_l;
  return out;
}

double SMatrix::unitarity_defect() const {
  return (entries * entries.adjoint() - Eigen::Matrix2cd::Identity()).norm();
}

double SMatrix::total_phase() const { return 0.5 * std::arg(entries.determinant()); }

SMatrix s_matrix(const ScatteringAmplitudes& amps) {
  if (!amps.channels_open())
    throw Error(Errc::partial_s_matrix, "s_matrix: both channels must be open");
  double ratio = std::sqrt(amps.k_plus.real() / amps.k_minus.real());
  SMatrix s;
  s.entries << ratio * amps.sigma_r, amps.rho_l, amps.rho_r, amps.sigma_l / ratio;
  cdouble half_trace = 0.5 * s.entries.trace();
  cdouble root = std::sqrt(half_trace * half_trace - s.entries.determinant());
  s.eigenvalues << half_trace + root, half_trace - root;
  s.delta_plus = 0.5 * std::arg(s.eigenvalues(0));
  s.delta_minus = 0.5 * std::arg(s.eigenvalues(1));
  return s;
}

ScatteringAmplitudes amplitudes(const ConfigKind& kind, Sector s, double E) {
  validate(kind);
  ScatteringAmplitudes out = std::visit(
      overloaded{
          [&](const DeltaStep& c) {
            double shift = c.g / (2.0 * c.mu);
            double fl = (c.mu / 2 - shift) * (c.mu / 2 - shift);
            double fr = (c.mu / 2 + shift) * (c.mu / 2 + shift);
            return delta_step_amplitudes(sector_sign(s) * c.mu, fl, fr, E);
          },
          [&](const DoubleEqual& c) {
            return double_delta_amplitudes(c.alpha, c.alpha, c.a, {c.alpha * c.alpha, 0.0, c.alpha * c.alpha},
                                           E, s);
          },
          [&](const DoubleUnequal& c) {
            return double_delta_amplitudes(c.alpha, c.beta, c.a, {c.alpha * c.alpha, 0.0, c.beta * c.beta}, E, s);
          },
          [&](const TripleUnequal& c) { return triple_delta_amplitudes(c.alpha, c.mu, c.beta, c.a, E, s); },
          [&](const TripleAlternating& c) {
            return triple_delta_amplitudes(-c.alpha, c.alpha, -c.alpha, c.a, E, s);
          },
          [&](const AlternatingArray& c) {
            if (c.J != 1)
              throw Error(Errc::unsupported_configuration,
                          "no closed-form amplitudes for alternating_array with J > 1");
            return triple_delta_amplitudes(-c.alpha, c.alpha, -c.alpha, c.a, E, s);
          },
          [&](const AlternatingComb&) -> ScatteringAmplitudes {
            throw Error(Errc::unsupported_configuration, "the periodic comb has no scattering amplitudes");
          },
      },
      kind);
  out.sector = s;
  return out;
}

Denominator scattering_denominator(const ConfigKind& kind, Sector s, double E) {
  validate(kind);
  return std::visit(
      overloaded{
          [&](const DeltaStep& c) {
            double shift = c.g / (2.0 * c.mu);
            return delta_step_denominator(sector_sign(s) * c.mu, (c.mu / 2 - shift) * (c.mu / 2 - shift),
                                          (c.mu / 2 + shift) * (c.mu / 2 + shift), E);
          },
          [&](const DoubleEqual& c) {
            return double_delta_denominator(c.alpha, c.alpha, c.a, {c.alpha * c.alpha, 0.0, c.alpha * c.alpha},
                                            E, s);
          },
          [&](const DoubleUnequal& c) {
            return double_delta_denominator(c.alpha, c.beta, c.a, {c.alpha * c.alpha, 0.0, c.beta * c.beta}, E,
                                            s);
          },
          [&](const TripleUnequal& c) { return triple_delta_denominator(c.alpha, c.mu, c.beta, c.a, E, s); },
          [&](const TripleAlternating& c) {
            return triple_alternating_denominator(c.alpha, c.a, channel_momentum(E, c.alpha * c.alpha / 4), s);
          },
          [&](const AlternatingArray& c) {
            if (c.J != 1)
              throw Error(Errc::unsupported_configuration,
                          "no closed-form denominator for alternating_array with J > 1");
            return triple_alternating_denominator(c.alpha, c.a, channel_momentum(E, c.alpha * c.alpha / 4), s);
          },
          [&](const AlternatingComb&) -> Denominator {
            throw Error(Errc::unsupported_configuration, "the periodic comb has no scattering denominator");
          },
      },
      kind);
}

std::vector<SMatrix> s_matrix_curve(const ConfigKind& kind, Sector s, std::span<const double> energies) {
  std::vector<SMatrix> out;
  out.reserve(energies.size());
  const double pi = std::numbers::pi;
  for (double E : energies) {
    SMatrix m = s_matrix(amplitudes(kind, s, E));
    if (!out.empty()) {
      const SMatrix& prev = out.back();
      double keep = std::abs(m.eigenvalues(0) - prev.eigenvalues(0)) + std::abs(m.eigenvalues(1) - prev.eigenvalues(1));
      double swap = std::abs(m.eigenvalues(0) - prev.eigenvalues(1)) + std::abs(m.eigenvalues(1) - prev.eigenvalues(0));
      if (swap < keep) {
        std::swap(m.eigenvalues(0), m.eigenvalues(1));
        std::swap(m.delta_plus, m.delta_minus);
      }
      m.delta_plus -= pi * std::round((m.delta_plus - prev.delta_plus) / pi);
      m.delta_minus -= pi * std::round((m.delta_minus - prev.delta_minus) / pi);
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace susydelta
