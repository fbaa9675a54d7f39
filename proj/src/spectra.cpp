#include "susydelta/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace susydelta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double decay(double floor, double E) { return std::sqrt(std::max(0.0, floor - E)); }

// cos(qL), q sin(qL), sin(qL)/q as functions of q^2, continued to q^2 < 0
struct EvenTrig {
  double c, qs, sq;
};

EvenTrig even_trig(double q2, double L) {
  if (q2 > 0) {
    double q = std::sqrt(q2), x = q * L;
    return {std::cos(x), q * std::sin(x), x == 0.0 ? L : std::sin(x) / q};
  }
  if (q2 < 0) {
    double Q = std::sqrt(-q2), x = Q * L;
    return {std::cosh(x), -Q * std::sinh(x), x == 0.0 ? L : std::sinh(x) / Q};
  }
  return {1.0, 0.0, L};
}

// x - sin x and sinh x - x without cancellation
double x_minus_sin(double x) {
  if (std::abs(x) < 1e-2) {
    double x2 = x * x;
    return x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
  }
  return x - std::sin(x);
}

double sinh_minus_x(double x) {
  if (std::abs(x) < 1e-2) {
    double x2 = x * x;
    return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
  }
  return std::sinh(x) - x;
}

double window_top(double floor_min) { return floor_min - 1e-12 * std::max(1.0, std::abs(floor_min)); }

SpectralEquation make(std::function<double(double)> f, double lo, double hi, std::string label,
                      Parity p = Parity::none) {
  return {std::move(f), lo, hi, std::move(label), p};
}

}  // namespace

std::string to_string(StateKind k) {
  switch (k) {
    case StateKind::bound: return "bound";
    case StateKind::anti_bound: return "anti_bound";
    case StateKind::threshold: return "threshold";
  }
  return "bound";
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

// ---------------------------------------------------------------------------

PiecewiseWavefunction::PiecewiseWavefunction(double energy, std::vector<WaveZone> zones)
    : energy_(energy), zones_(std::move(zones)) {
  for (std::size_t i = 0; i + 1 < zones_.size(); ++i) boundaries_.push_back(zones_[i].x1);
}

std::size_t PiecewiseWavefunction::zone_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(boundaries_.begin(), boundaries_.end(), x) -
                                  boundaries_.begin());
}

double PiecewiseWavefunction::eval(const WaveZone& z, double x, bool derivative) const {
  switch (z.type) {
    case WaveZone::Type::left_tail: {
      double v = z.value * std::exp(z.rate * (x - z.x1));
      return derivative ? z.rate * v : v;
    }
    case WaveZone::Type::right_tail: {
      double v = z.value * std::exp(z.rate * (x - z.x0));
      return derivative ? z.rate * v : v;
    }
    case WaveZone::Type::interior: break;
  }
  double t = x - z.x0;
  double d = energy_ - z.floor;
  if (d > 0) {
    double q = std::sqrt(d), c = std::cos(q * t), s = std::sin(q * t);
    return derivative ? -z.value * q * s + z.slope * c : z.value * c + z.slope * s / q;
  }
  if (d < 0) {
    double k = std::sqrt(-d), c = std::cosh(k * t), s = std::sinh(k * t);
    return derivative ? z.value * k * s + z.slope * c : z.value * c + z.slope * s / k;
  }
  return derivative ? z.slope : z.value + z.slope * t;
}

double PiecewiseWavefunction::operator()(double x) const {
  if (zones_.empty()) return 0.0;
  return eval(zones_[zone_index(x)], x, false);
}

double PiecewiseWavefunction::derivative(double x) const {
  if (zones_.empty()) return 0.0;
  return eval(zones_[zone_index(x)], x, true);
}

double PiecewiseWavefunction::value_left(std::size_t i) const { return eval(zones_.at(i), boundaries_.at(i), false); }
double PiecewiseWavefunction::value_right(std::size_t i) const { return eval(zones_.at(i + 1), boundaries_.at(i), false); }
double PiecewiseWavefunction::derivative_left(std::size_t i) const { return eval(zones_.at(i), boundaries_.at(i), true); }
double PiecewiseWavefunction::derivative_right(std::size_t i) const {
  return eval(zones_.at(i + 1), boundaries_.at(i), true);
}

double PiecewiseWavefunction::norm_squared() const {
  double total = 0.0;
  for (const auto& z : zones_) {
    if (z.type == WaveZone::Type::left_tail) {
      if (z.rate <= 0) return kInf;
      total += z.value * z.value / (2.0 * z.rate);
      continue;
    }
    if (z.type == WaveZone::Type::right_tail) {
      if (z.rate >= 0) return kInf;
      total += z.value * z.value / (-2.0 * z.rate);
      continue;
    }
    // psi = c1 C(t) + c2 S(t) on [0, L]
    double L = z.x1 - z.x0, c1 = z.value, c2 = z.slope;
    double d = energy_ - z.floor;
    double cc, ss, cs;  // int C^2, int S^2, int 2 C S
    if (d > 0) {
      double q = std::sqrt(d), x = 2.0 * q * L;
      cc = L / 2 + std::sin(x) / (4.0 * q);
      ss = x_minus_sin(x) / (4.0 * q * q * q);
      double sl = std::sin(q * L) / q;
      cs = sl * sl;
    } else if (d < 0) {
      double k = std::sqrt(-d), x = 2.0 * k * L;
      cc = L / 2 + std::sinh(x) / (4.0 * k);
      ss = sinh_minus_x(x) / (4.0 * k * k * k);
      double sl = std::sinh(k * L) / k;
      cs = sl * sl;
    } else {
      cc = L;
      ss = L * L * L / 3.0;
      cs = L * L;
    }
    total += c1 * c1 * cc + c2 * c2 * ss + c1 * c2 * cs;
  }
  return total;
}

void PiecewiseWavefunction::scale(double c) {
  for (auto& z : zones_) {
    z.value *= c;
    z.slope *= c;
  }
}

std::pair<double, double> PiecewiseWavefunction::support(double decay_lengths) const {
  if (zones_.empty()) return {0.0, 0.0};
  double lo = boundaries_.empty() ? 0.0 : boundaries_.front();
  double hi = boundaries_.empty() ? 0.0 : boundaries_.back();
  double span = std::max(1.0, hi - lo);
  double rl = zones_.front().rate, rr = -zones_.back().rate;
  lo -= rl > 0 ? decay_lengths / rl : decay_lengths * span;
  hi += rr > 0 ? decay_lengths / rr : decay_lengths * span;
  return {lo, hi};
}

// ---------------------------------------------------------------------------

PotentialSpec hamiltonian_potential(const ConfigKind& kind, Sector s, Hamiltonian h) {
  if (h == Hamiltonian::bare) return bare_potential(kind);
  return partner_potential(build_superpotential(kind), s);
}

std::vector<SpectralEquation> spectral_residuals(const ConfigKind& kind, Sector s, Hamiltonian h) {
  validate(kind);
  const double sg = sector_sign(s);
  std::vector<SpectralEquation> out;
  if (h == Hamiltonian::bare) {
    std::visit(overloaded{
                   [&](const DeltaStep& c) {
                     double top = window_top(std::min(0.0, c.g));
                     double depth = std::abs(c.mu) + std::abs(c.g) / std::abs(c.mu);
                     out.push_back(make(
                         [c](double E) { return decay(0.0, E) + decay(c.g, E) + c.mu; }, -depth * depth, top,
                         "pole k+p+i mu=0"));
                   },
                   [&](const DoubleEqual& c) {
                     double lo = -4.0 * c.alpha * c.alpha, top = window_top(0.0);
                     out.push_back(make(
                         [c](double E) {
                           double k = decay(0.0, E);
                           return 2 * k + c.alpha + c.alpha * std::exp(-2 * c.a * k);
                         },
                         lo, top, "bare even", Parity::even));
                     out.push_back(make(
                         [c](double E) {
                           double k = decay(0.0, E);
                           return 2 * k + c.alpha - c.alpha * std::exp(-2 * c.a * k);
                         },
                         lo, top, "bare odd", Parity::odd));
                   },
                   [&](const DoubleUnequal& c) {
                     double depth = std::abs(c.alpha) + std::abs(c.beta);
                     out.push_back(make(
                         [c](double E) {
                           double k = decay(0.0, E);
                           return (2 * k + c.alpha) * (2 * k + c.beta) - c.alpha * c.beta * std::exp(-4 * c.a * k);
                         },
                         -depth * depth, window_top(0.0), "bare two-delta determinant"));
                   },
                   [&](const auto&) {
                     throw Error(Errc::unsupported_configuration,
                                 "no bare spectral equation for " + kind_name(kind));
                   },
               },
               kind);
    return out;
  }

  std::visit(
      overloaded{
          [&](const DeltaStep& c) {
            double shift = c.g / (2 * c.mu);
            double fl = (c.mu / 2 - shift) * (c.mu / 2 - shift), fr = (c.mu / 2 + shift) * (c.mu / 2 + shift);
            out.push_back(make([=](double E) { return decay(fl, E) + decay(fr, E) + sg * c.mu; }, 1e-12,
                               window_top(std::min(fl, fr)), "pole k+p+i mu=0"));
          },
          [&](const DoubleEqual& c) {
            double top = window_top(c.alpha * c.alpha);
            out.push_back(make(
                [=](double E) {
                  double q = std::sqrt(std::max(0.0, E)), A = decay(c.alpha * c.alpha, E) + sg * c.alpha;
                  return q * std::sin(q * c.a) - A * std::cos(q * c.a);
                },
                1e-12, top, "double equal even", Parity::even));
            out.push_back(make(
                [=](double E) {
                  double q = std::sqrt(std::max(0.0, E)), A = decay(c.alpha * c.alpha, E) + sg * c.alpha;
                  return q * std::cos(q * c.a) + A * std::sin(q * c.a);
                },
                1e-12, top, "double equal odd", Parity::odd));
          },
          [&](const DoubleUnequal& c) {
            double top = window_top(std::min(c.alpha * c.alpha, c.beta * c.beta));
            out.push_back(make(
                [=](double E) {
                  double A = decay(c.alpha * c.alpha, E) + sg * c.alpha;
                  double B = decay(c.beta * c.beta, E) + sg * c.beta;
                  EvenTrig t = even_trig(E, 2 * c.a);
                  return (A + B) * t.c - t.qs + A * B * t.sq;
                },
                1e-12, top, "double unequal determinant"));
          },
          [&](const TripleUnequal& c) {
            double fl = (c.alpha + c.mu / 2) * (c.alpha + c.mu / 2);
            double fr = (c.beta + c.mu / 2) * (c.beta + c.mu / 2);
            out.push_back(make(
                [=](double E) {
                  double m = sg * c.mu;
                  double A = decay(fl, E) + sg * c.alpha, B = decay(fr, E) + sg * c.beta;
                  double q2 = E - c.mu * c.mu / 4;
                  EvenTrig t = even_trig(q2, 2 * c.a);
                  double h = even_trig(q2, c.a).sq;
                  return 2 * t.c * (A + B) + m * (t.c + 1) - 2 * t.qs + t.sq * (m * (A + B) + 2 * A * B) +
                         2 * m * A * B * h * h;
                },
                1e-12, window_top(std::min(fl, fr)), "triple determinant"));
          },
          [&](const TripleAlternating& c) {
            double f = c.alpha * c.alpha / 4, top = window_top(f), al = c.alpha, a = c.a;
            out.push_back(make([=](double E) { return 2 * decay(f, E) - sg * al; }, 1e-12, top, "alternating ground"));
            out.push_back(make(
                [=](double E) {
                  double k = decay(f, E);
                  return 2 * k + al - al * std::exp(-2 * a * k);
                },
                1e-12, top, "alternating second"));
            out.push_back(make(
                [=](double E) {
                  double k = decay(f, E);
                  return 2 * k - al + al * std::exp(-2 * a * k);
                },
                1e-12, top, "alternating third"));
          },
          [&](const AlternatingArray& c) {
            if (c.J != 1)
              throw Error(Errc::unsupported_configuration, "no spectral equation for alternating_array with J > 1");
            out = spectral_residuals(TripleAlternating{c.alpha, c.a}, s, h);
          },
          [&](const AlternatingComb&) {
            throw Error(Errc::unsupported_configuration, "the comb spectrum is a band structure, use the comb module");
          },
      },
      kind);
  return out;
}

// ---------------------------------------------------------------------------

WavefunctionResult build_wavefunction(const StateParams& st, const PotentialSpec& v) {
  v.validate();
  const auto& b = v.zone_boundaries;
  if (b.empty()) throw Error(Errc::invalid_state, "build_wavefunction: potential has no interfaces");
  const double E = st.energy;
  double kl = decay(v.floor_left(), E), kr = decay(v.floor_right(), E);
  double rl = st.left_decays ? kl : -kl;
  double rr = st.right_decays ? -kr : kr;

  std::vector<WaveZone> zones;
  zones.push_back(WaveZone{WaveZone::Type::left_tail, -kInf, b.front(), v.floor_left(), 1.0, rl, rl});
  Eigen::Vector2d y(1.0, rl);
  for (std::size_t i = 0; i < b.size(); ++i) {
    double lambda = v.strength_at(i);
    y(1) += lambda * y(0);
    if (i + 1 < b.size()) {
      double width = b[i + 1] - b[i];
      if (width <= 0.0) continue;
      WaveZone z{WaveZone::Type::interior, b[i], b[i + 1], v.floors[i + 1], y(0), y(1), 0.0};
      zones.push_back(z);
      double d = E - z.floor;
      if (d > 0) {
        double q = std::sqrt(d), c = std::cos(q * width), s = std::sin(q * width);
        y = Eigen::Vector2d(y(0) * c + y(1) * s / q, -y(0) * q * s + y(1) * c);
      } else if (d < 0) {
        double k = std::sqrt(-d), c = std::cosh(k * width), s = std::sinh(k * width);
        y = Eigen::Vector2d(y(0) * c + y(1) * s / k, y(0) * k * s + y(1) * c);
      } else {
        y(0) += y(1) * width;
      }
    } else {
      zones.push_back(WaveZone{WaveZone::Type::right_tail, b[i], kInf, v.floor_right(), y(0), y(0) * rr, rr});
    }
  }

  WavefunctionResult out;
  out.psi = PiecewiseWavefunction(E, std::move(zones));
  if (kl <= kThresholdKappa || kr <= kThresholdKappa)
    out.kind = StateKind::threshold;
  else if (st.left_decays && st.right_decays)
    out.kind = StateKind::bound;
  else
    out.kind = StateKind::anti_bound;
  if (out.kind == StateKind::bound) {
    double n2 = out.psi.norm_squared();
    if (std::isfinite(n2) && n2 > 0) {
      out.psi.scale(1.0 / std::sqrt(n2));
      out.normalized = true;
    }
  }
  return out;
}

WavefunctionResult build_wavefunction(const StateParams& st, const ConfigKind& kind, Sector s, Hamiltonian h) {
  return build_wavefunction(st, hamiltonian_potential(kind, s, h));
}

Parity detect_parity(const PiecewiseWavefunction& psi, double tol) {
  auto [lo, hi] = psi.support(10.0);
  double x_max = std::max(std::abs(lo), std::abs(hi));
  double peak = 0.0, even = 0.0, odd = 0.0;
  const int n = 400;
  for (int i = 1; i <= n; ++i) {
    // irrational offset keeps the samples off the zone boundaries
    double x = x_max * (i - 0.5 + 0.1234567) / n;
    double p = psi(x), m = psi(-x);
    peak = std::max({peak, std::abs(p), std::abs(m)});
    even = std::max(even, std::abs(p - m));
    odd = std::max(odd, std::abs(p + m));
  }
  if (peak == 0.0) return Parity::none;
  if (even <= tol * peak) return Parity::even;
  if (odd <= tol * peak) return Parity::odd;
  return Parity::none;
}

std::optional<std::function<double(double)>> closed_form_wavefunction(const ConfigKind& kind, Sector s,
                                                                      double energy, Parity parity, Hamiltonian h) {
  const double sg = sector_sign(s);
  if (h == Hamiltonian::supersymmetric && energy == 0.0) {
    ZeroMode z = zero_mode(build_superpotential(kind), s);
    if (!z.normalizable) return std::nullopt;
    return [z](double x) { return z(x); };
  }
  if (h == Hamiltonian::bare) {
    const auto* c = std::get_if<DeltaStep>(&kind);
    if (!c || c->mu >= 0 || c->mu * c->mu <= std::abs(c->g)) return std::nullopt;
    double m = std::abs(c->mu);
    double kappa = (m * m - c->g) / (2 * m), eta = (m * m + c->g) / (2 * m);
    double n = std::sqrt((m * m * m * m - c->g * c->g) / (2 * m * m * m));
    return [=](double x) { return x < 0 ? n * std::exp(kappa * x) : n * std::exp(-eta * x); };
  }
  if (const auto* c = std::get_if<DoubleEqual>(&kind)) {
    double q = std::sqrt(energy), k = std::sqrt(c->alpha * c->alpha - energy), a = c->a;
    double sc = std::sin(q * a) * std::cos(q * a) * sg * c->alpha / q;
    if (parity == Parity::even) {
      double n = std::sqrt(k / (1 + k * a - sc));
      return [=](double x) {
        if (x < -a) return n * std::cos(q * a) * std::exp(k * (x + a));
        if (x < a) return n * std::cos(q * x);
        return n * std::cos(q * a) * std::exp(-k * (x - a));
      };
    }
    if (parity == Parity::odd) {
      double n = std::sqrt(k / (1 + k * a + sc));
      return [=](double x) {
        if (x < -a) return -n * std::sin(q * a) * std::exp(k * (x + a));
        if (x < a) return n * std::sin(q * x);
        return n * std::sin(q * a) * std::exp(-k * (x - a));
      };
    }
    return std::nullopt;
  }
  if (const auto* c = std::get_if<DoubleUnequal>(&kind)) {
    double q = std::sqrt(energy), a = c->a;
    double k = std::sqrt(c->alpha * c->alpha - energy), p = std::sqrt(c->beta * c->beta - energy);
    double cq = p + sg * c->beta;  // q times the zone-I mixing coefficient
    double cf = cq / q;
    double s2 = std::sin(2 * q * a), c2 = std::cos(2 * q * a);
    double r = (c2 + cf * s2) * (c2 + cf * s2);
    double m = (2 * q * a * (q * q + cq * cq) + s2 * ((q * q - cq * cq) * c2 + 2 * cq * q * s2)) / (2 * q * q * q);
    double n = std::sqrt(k / (r / 2 + k * (m + 1 / (2 * p))));
    return [=](double x) {
      if (x < -a) return n * (c2 + cf * s2) * std::exp(k * (x + a));
      if (x < a) return n * (std::cos(q * (x - a)) - cf * std::sin(q * (x - a)));
      return n * std::exp(-p * (x - a));
    };
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<BoundState> find_bound_states(const ConfigKind& kind, Sector s, const SpectrumOptions& opt) {
  validate(kind);
  const Hamiltonian h = opt.hamiltonian;
  PotentialSpec v = hamiltonian_potential(kind, s, h);
  const bool symmetric = is_reflection_symmetric(kind);
  std::vector<BoundState> states;

  auto finish = [&](BoundState st, const StateParams& params, Parity hint) {
    WavefunctionResult w = build_wavefunction(params, v);
    st.wavefunction = std::move(w.psi);
    st.kind = w.kind;
    st.normalized = w.normalized;
    st.kappa_left = (params.left_decays ? 1.0 : -1.0) * decay(v.floor_left(), st.energy);
    st.kappa_right = (params.right_decays ? 1.0 : -1.0) * decay(v.floor_right(), st.energy);
    for (std::size_t i = 1; i + 1 < v.floors.size(); ++i)
      if (st.energy > v.floors[i]) {
        st.inner_momentum = std::sqrt(st.energy - v.floors[i]);
        break;
      }
    st.parity = hint != Parity::none ? hint : (symmetric ? detect_parity(st.wavefunction) : Parity::none);
    st.sector = s;
    states.push_back(std::move(st));
  };

  if (h == Hamiltonian::bare) {
    if (const auto* c = std::get_if<DeltaStep>(&kind)) {
      // closed-form pole k + p + i mu = 0 with signed decay constants
      double kl = (-c->mu + c->g / c->mu) / 2, kr = (-c->mu - c->g / c->mu) / 2;
      double E = -kl * kl;
      bool bound = kl > kThresholdKappa && kr > kThresholdKappa;
      if (bound || opt.include_anti_bound) {
        BoundState st;
        st.energy = E;
        st.label = "pole k+p+i mu=0";
        finish(std::move(st), {E, kl > 0, kr > 0}, Parity::none);
      }
      return states;
    }
  }

  for (const auto& eq : spectral_residuals(kind, s, h)) {
    if (!(eq.e_hi > eq.e_lo)) continue;
    for (double E : scan_roots(eq.residual, eq.e_lo, eq.e_hi, opt.scan)) {
      bool dup = std::any_of(states.begin(), states.end(), [&](const BoundState& o) {
        return std::abs(o.energy - E) <= opt.scan.merge_tol * std::max(1.0, std::abs(E));
      });
      if (dup) continue;
      BoundState st;
      st.energy = E;
      st.label = eq.label;
      finish(std::move(st), {E, true, true}, eq.parity);
    }
  }

  if (h == Hamiltonian::supersymmetric) {
    Superpotential w = build_superpotential(kind);
    ZeroMode z = zero_mode(w, s);
    double sg = sector_sign(s);
    bool left_decays = sg * w.slopes().front() > 0, right_decays = sg * w.slopes().back() < 0;
    if (z.normalizable || opt.include_anti_bound) {
      BoundState st;
      st.energy = 0.0;
      st.label = "zero mode";
      finish(std::move(st), {0.0, left_decays, right_decays}, Parity::none);
      if (!z.normalizable && states.back().kind == StateKind::bound) states.back().kind = StateKind::threshold;
    }
  }

  std::sort(states.begin(), states.end(), [](const BoundState& x, const BoundState& y) { return x.energy < y.energy; });
  return states;
}

// ---------------------------------------------------------------------------

double intertwining_defect(const PiecewiseWavefunction& psi0, const PiecewiseWavefunction& psi1,
                           const Superpotential& w, int samples) {
  auto [lo0, hi0] = psi0.support(12.0);
  auto [lo1, hi1] = psi1.support(12.0);
  double lo = std::min(lo0, lo1), hi = std::max(hi0, hi1);
  double guard = 1e-6 * (hi - lo);
  std::vector<double> phi, p1;
  for (int i = 0; i < samples; ++i) {
    double x = lo + (hi - lo) * (i + 0.5) / samples;
    bool near_kink = std::any_of(w.breakpoints().begin(), w.breakpoints().end(),
                                 [&](double b) { return std::abs(x - b) < guard; });
    if (near_kink) continue;
    phi.push_back(psi0.derivative(x) - w.slope(x) * psi0(x));
    p1.push_back(psi1(x));
  }
  double num = 0.0, den = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    num += phi[i] * p1[i];
    den += p1[i] * p1[i];
    peak = std::max(peak, std::abs(phi[i]));
  }
  if (den == 0.0 || peak == 0.0) return kInf;
  double c = num / den, worst = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, std::abs(phi[i] - c * p1[i]));
  return worst / peak;
}

PairingReport susy_pairing_report(const ConfigKind& kind, const SpectrumOptions& opt) {
  SpectrumOptions o = opt;
  o.hamiltonian = Hamiltonian::supersymmetric;
  auto s0 = find_bound_states(kind, Sector::bosonic, o);
  auto s1 = find_bound_states(kind, Sector::fermionic, o);
  Superpotential w = build_superpotential(kind);

  PairingReport rep;
  rep.states = s0;
  rep.states.insert(rep.states.end(), s1.begin(), s1.end());
  const std::size_t off = s0.size();
  std::vector<bool> used(s1.size(), false);
  for (std::size_t i = 0; i < s0.size(); ++i) {
    if (s0[i].kind != StateKind::bound) continue;
    if (s0[i].energy == 0.0) {
      rep.singlets.push_back(i);
      continue;
    }
    std::size_t best = s1.size();
    double gap = kInf;
    for (std::size_t j = 0; j < s1.size(); ++j) {
      if (used[j] || s1[j].kind != StateKind::bound || s1[j].energy == 0.0) continue;
      double g = std::abs(s1[j].energy - s0[i].energy);
      if (g < gap) {
        gap = g;
        best = j;
      }
    }
    if (best == s1.size() || gap >= 1e-9)
      throw Error(Errc::inconsistency, "susy_pairing_report: bosonic state at E = " + std::to_string(s0[i].energy) +
                                           " has no fermionic partner");
    used[best] = true;
    double defect = intertwining_defect(s0[i].wavefunction, s1[best].wavefunction, w);
    if (!(defect <= 1e-6))
      throw Error(Errc::inconsistency, "susy_pairing_report: intertwining defect " + std::to_string(defect));
    rep.pairs.push_back({i, off + best, gap, defect});
  }
  for (std::size_t j = 0; j < s1.size(); ++j) {
    if (s1[j].kind != StateKind::bound || used[j]) continue;
    if (s1[j].energy == 0.0) {
      rep.singlets.push_back(off + j);
      continue;
    }
    throw Error(Errc::inconsistency, "susy_pairing_report: fermionic state at E = " + std::to_string(s1[j].energy) +
                                         " has no bosonic partner");
  }
  return rep;
}

}  // namespace susydelta
