#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "susydelta/comb.hpp"
#include "susydelta/oracle.hpp"

using namespace susydelta;
using namespace std::complex_literals;

TEST_CASE("dispersion limits and symmetries") {
  const double alpha = 3.0, a = 1.0;
  CHECK(std::abs(dispersion_g(0.0, alpha, a) - (1 - a * a * alpha * alpha / 2)) < 1e-15);
  CHECK(std::abs(dispersion_g(1e-7, alpha, a) - (1 - a * a * alpha * alpha / 2)) < 1e-9);
  for (double k : {0.2, 1.3, 4.4}) {
    CHECK(std::abs(dispersion_g(k, 0.0, a) - std::cos(2 * k * a)) < 1e-15);
    CHECK(dispersion_g(k, alpha, a) == dispersion_g(k, -alpha, a));
    double raw = ((4 * k * k + alpha * alpha) * std::cos(2 * k * a) - alpha * alpha) / (4 * k * k);
    CHECK(std::abs(dispersion_g(k, alpha, a) - raw) < 1e-13);
    CHECK(std::abs(dispersion_g(k, alpha, a) - oracle_dispersion(alpha, a, k)) < 1e-10);
  }
}

TEST_CASE("hyperbolic branch is g at imaginary momentum") {
  const double alpha = 2.5, a = 0.7;
  for (double kappa : {0.1, 0.9, 2.0}) {
    double raw = ((4 * kappa * kappa - alpha * alpha) * std::cosh(2 * kappa * a) + alpha * alpha) / (4 * kappa * kappa);
    CHECK(std::abs(dispersion_g_hyperbolic(kappa, alpha, a) - raw) < 1e-13 * std::abs(raw));
    cdouble g = dispersion_g(cdouble(0.0, kappa), alpha, a);
    CHECK(std::abs(g.imag()) < 1e-12);
    CHECK(std::abs(g.real() - raw) < 1e-12 * std::max(1.0, std::abs(raw)));
  }
  CHECK(std::abs(dispersion_g_hyperbolic(alpha / 2, alpha, a) - 1.0) < 1e-14);
}

TEST_CASE("propagating bands of alpha = 3, a = 1") {
  const double alpha = 3.0, a = 1.0;
  auto b0 = propagating_bands(alpha, a, 14.0, Sector::bosonic);
  auto b1 = propagating_bands(alpha, a, 14.0, Sector::fermionic);
  REQUIRE(b0.size() == 4);
  REQUIRE(b1.size() == b0.size());
  for (std::size_t i = 0; i < b0.size(); ++i) {
    CHECK(b0[i].lo == b1[i].lo);
    CHECK(b0[i].hi == b1[i].hi);
    CHECK(b0[i].lo < b0[i].hi);
    if (i > 0) CHECK(b0[i - 1].hi < b0[i].lo);
    CHECK(std::abs(b0[i].energy_lo - (b0[i].lo * b0[i].lo + alpha * alpha / 4)) < 1e-12);
    double mid = 0.5 * (b0[i].lo + b0[i].hi);
    CHECK(std::abs(dispersion_g(mid, alpha, a)) <= 1.0);
  }
  CHECK(std::abs(dispersion_g(b0[0].lo, alpha, a) + 1.0) < 1e-10);
  CHECK(!b0.back().upper_is_edge);
  CHECK(band_scan_step(alpha, a) == doctest::Approx(std::min(std::numbers::pi / 20, alpha / 50)));
}

TEST_CASE("bands are independent of the thread count") {
  auto a = propagating_bands(2.2, 0.8, 10.0, Sector::bosonic, 1);
  auto b = propagating_bands(2.2, 0.8, 10.0, Sector::bosonic, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lo == b[i].lo);
    CHECK(a[i].hi == b[i].hi);
  }
}

TEST_CASE("non-propagating band and critical width") {
  auto np = nonpropagating_band(4.0, 1.0);
  CHECK(np.a_critical == doctest::Approx(0.5));
  REQUIRE(np.upper_edge_kappa.has_value());
  CHECK(std::abs(dispersion_g_hyperbolic(*np.upper_edge_kappa, 4.0, 1.0) + 1.0) < 1e-10);
  REQUIRE(np.band.has_value());
  CHECK(np.band->hi == doctest::Approx(2.0));
  CHECK(np.band->lo == *np.upper_edge_kappa);

  // exactly critical: the edge sits at kappa = 0
  auto crit = upper_edge_kappa(2.0, 1.0);
  REQUIRE(crit.has_value());
  CHECK(*crit == 0.0);
  CHECK(!upper_edge_kappa(2.0, 0.9).has_value());
  auto sub = nonpropagating_band(2.0, 0.9);
  REQUIRE(sub.band.has_value());
  CHECK(!sub.band->upper_is_edge);
  CHECK(sub.band->lo == 0.0);
}

TEST_CASE("q = 0 roots") {
  const double alpha = 3.0;
  auto np = nonpropagating_band(alpha, 1.0, 11);
  int seen = 0;
  for (const auto& s : np.solutions) {
    if (s.q != 0.0) continue;
    ++seen;
    if (s.accepted) CHECK(s.kappa == alpha / 2);
    else CHECK(s.kappa == -alpha / 2);
  }
  CHECK(seen == 2);
  for (const auto& s : np.solutions) {
    if (!s.accepted || s.q == 0.0) continue;
    CHECK(s.kappa > 0);
    CHECK(std::abs(dispersion_g_hyperbolic(s.kappa, alpha, 1.0) - std::cos(2 * s.q)) < 1e-9);
  }
}

TEST_CASE("Bloch wavefunction") {
  const double alpha = 3.0, a = 1.0;
  auto bands = propagating_bands(alpha, a, 14.0);
  REQUIRE(!bands.empty());
  for (Sector s : {Sector::bosonic, Sector::fermionic}) {
    double k = 0.5 * (bands[1].lo + bands[1].hi);
    double q = std::acos(dispersion_g(k, alpha, a)) / (2 * a);
    BlochState st = bloch_wavefunction(q, k, s, alpha, a);
    CHECK(st.residual < 1e-10);
    cdouble phase = std::exp(2.0i * q * a);
    for (double x : {0.1, 0.6, 1.4}) {
      CHECK(std::abs(st(x + 2 * a) - phase * st(x)) < 1e-9 * st.coefficients.cwiseAbs().maxCoeff());
    }
    // jump at a has strength -(-1)^s alpha
    double lam = -sector_sign(s) * alpha, eps = 1e-7;
    cdouble jump = st.derivative(a + eps) - st.derivative(a - eps);
    CHECK(std::abs(jump - lam * st(a)) < 1e-5 * std::max(1.0, std::abs(st(a))));
    auto sys = bloch_system(q, k, s, alpha, a);
    CHECK((sys * st.coefficients).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(bloch_wavefunction(0.3, 1.0, Sector::bosonic, alpha, a), Error);
}

TEST_CASE("evanescent Bloch state at q = 0") {
  const double alpha = 3.0, a = 1.0;
  BlochState st = bloch_wavefunction(0.0, cdouble(0.0, alpha / 2), Sector::bosonic, alpha, a);
  CHECK(st.residual < 1e-10);
  CHECK(std::abs(st(0.3 + 2 * a) - st(0.3)) < 1e-9 * st.coefficients.cwiseAbs().maxCoeff());
}

TEST_CASE("comb zero modes") {
  const double alpha = 1.6, a = 0.9;
  CombZeroModes zm = comb_zero_modes(alpha, a);
  CHECK(zm.bloch_defect < 1e-12);
  CHECK(zm.zero_modes_bosonic == 1);
  CHECK(zm.zero_modes_fermionic == 1);
  CHECK(zm.index_contribution == 0);
  CHECK(zm.susy_unbroken);
  CHECK(std::abs(zm.bosonic(0.0) - std::exp(-alpha * a / 4)) < 1e-14);
  CHECK(std::abs(zm.fermionic(0.0) - std::exp(alpha * a / 4)) < 1e-14);
  CHECK(std::abs(zm.bosonic(a) - std::exp(alpha * a / 4)) < 1e-14);
  CHECK(std::abs(zm.bosonic(0.37) - zm.bosonic(0.37 + 2 * a)) < 1e-13);
}
