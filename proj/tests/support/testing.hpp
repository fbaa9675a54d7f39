#pragma once

// Helpers shared by the unit tests and the acceptance binary. Nothing here calls the
// library's own quadrature or root finders.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "susydelta/model.hpp"

namespace testing_support {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

/// Composite 20-point Gauss-Legendre on [a, b] with equal panels.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 50) {
  static const GaussLegendre gl(20);
  double h = (b - a) / panels, sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    double c = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < gl.x.size(); ++i) sum += gl.w[i] * f(c + 0.5 * h * gl.x[i]);
  }
  return 0.5 * h * sum;
}

/// Integral over [lo, hi] split at the given kinks so every panel sees a smooth integrand.
inline double gauss_legendre_piecewise(const std::function<double(double)>& f, std::vector<double> kinks, double lo,
                                       double hi, int panels = 200) {
  std::vector<double> pts{lo};
  for (double k : kinks)
    if (k > lo && k < hi) pts.push_back(k);
  pts.push_back(hi);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += gauss_legendre(f, pts[i], pts[i + 1], panels);
  return sum;
}

/// Positive-parameter configurations of the three finite families used by the pairing and
/// oracle sweeps; with probability 1/2 every strength is flipped.
inline susydelta::ConfigKind random_finite_config(std::mt19937_64& rng, int family) {
  std::uniform_real_distribution<double> s(0.5, 3.0), w(0.5, 2.5), coin(0.0, 1.0);
  double sg = coin(rng) < 0.5 ? 1.0 : -1.0;
  switch (family % 3) {
    case 0: return susydelta::DoubleEqual{sg * s(rng), w(rng)};
    case 1: return susydelta::DoubleUnequal{sg * s(rng), sg * s(rng), w(rng)};
    default: return susydelta::TripleUnequal{sg * s(rng), sg * s(rng), sg * s(rng), w(rng)};
  }
}

}  // namespace testing_support
