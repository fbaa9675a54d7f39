#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "support/testing.hpp"
#include "susydelta/numerics.hpp"

using namespace susydelta;

TEST_CASE("bisect converges to the bracketed root") {
  double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("scan_roots finds every simple root and skips poles") {
  auto roots = scan_roots([](double x) { return std::sin(x); }, 0.5, 10.0);
  REQUIRE(roots.size() == 3);
  for (int n = 1; n <= 3; ++n) CHECK(std::abs(roots[n - 1] - n * std::numbers::pi) < 1e-11);

  // tan changes sign through its pole at pi/2 without vanishing
  CHECK(scan_roots([](double x) { return std::tan(x); }, 1.0, 2.0).empty());
}

TEST_CASE("scan_roots does not depend on the thread count") {
  auto f = [](double x) { return std::cos(3 * x) - 0.2; };
  ScanOptions one, four;
  four.threads = 4;
  CHECK(scan_roots(f, 0.0, 20.0, one) == scan_roots(f, 0.0, 20.0, four));
}

TEST_CASE("merge_sorted merges near duplicates") {
  auto m = merge_sorted({3.0, 1.0, 1.0 + 1e-12, 2.0}, 1e-9);
  CHECK(m == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("adaptive Gauss-Kronrod agrees with Gauss-Legendre and exact values") {
  auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(std::abs(r.value - (std::numbers::e - 1.0)) < 1e-14);
  auto f = [](double x) { return 1.0 / (1.0 + 25 * x * x); };
  double gk = integrate(f, -1.0, 1.0).value;
  CHECK(std::abs(gk - 2.0 * std::atan(5.0) / 5.0) < 1e-13);
  CHECK(std::abs(gk - testing_support::gauss_legendre(f, -1.0, 1.0, 40)) < 1e-13);
}

TEST_CASE("richardson_odd removes odd powers of h") {
  std::vector<double> h{1.0, 0.5, 0.25, 0.125}, v;
  for (double x : h) v.push_back(2.0 + 0.3 * x - 1.1 * x * x * x + 0.7 * std::pow(x, 5));
  CHECK(std::abs(richardson_odd(h, v) - 2.0) < 1e-13);
}

TEST_CASE("unwrap removes jumps of one period") {
  std::vector<double> p{0.1, 0.2, 0.3 - std::numbers::pi, 0.4 - std::numbers::pi};
  auto u = unwrap(p, std::numbers::pi);
  CHECK(u[2] == doctest::Approx(0.3));
  CHECK(u[3] == doctest::Approx(0.4));
}

TEST_CASE("parallel_map keeps order and propagates exceptions") {
  auto sq = parallel_map<int>(100, 7, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) CHECK(sq[i] == i * i);
  CHECK_THROWS(parallel_map<int>(10, 3, [](std::size_t i) -> int {
    if (i == 7) throw std::runtime_error("boom");
    return 0;
  }));
}
