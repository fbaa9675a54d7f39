#include <cmath>
#include <complex>

#include "doctest.h"
#include "susydelta/oracle.hpp"

using namespace susydelta;

TEST_CASE("empty potential has identity transfer matrix") {
  TransferMatrix m = transfer_matrix(free_potential(), 2.0);
  CHECK((m.entries - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("splitting a zone leaves the transfer matrix unchanged") {
  PotentialSpec v;
  v.zone_boundaries = {-1.0, 2.0};
  v.floors = {1.0, 0.5, 2.0};
  v.deltas = {{-1.0, 0.7}, {2.0, -1.2}};
  PotentialSpec split = v;
  split.zone_boundaries = {-1.0, 0.4, 2.0};
  split.floors = {1.0, 0.5, 0.5, 2.0};
  for (double E : {0.3, 1.5, 4.0}) {
    auto a = transfer_matrix(v, E), b = transfer_matrix(split, E);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("determinant and time reversal") {
  PotentialSpec v;
  v.zone_boundaries = {-1.0, 0.0, 1.5};
  v.floors = {1.0, 0.0, 0.25, 3.0};
  v.deltas = {{-1.0, 2.0}, {0.0, -1.0}, {1.5, 0.5}};
  TransferMatrix m = transfer_matrix(v, 4.5);
  CHECK(m.determinant_defect() < 1e-12);
  CHECK(std::abs(m.entries(1, 1) - std::conj(m.entries(0, 0))) < 1e-12);
  CHECK(std::abs(m.entries(1, 0) - std::conj(m.entries(0, 1))) < 1e-12);
  CHECK(oracle_amplitudes(v, 4.5).flux_residual() < 1e-12);
}

TEST_CASE("two deltas compose from single-delta pieces") {
  const double E = 2.0, gap = 1.3;
  PotentialSpec v = delta_array({{0.0, 1.1}, {gap, -0.4}});
  Eigen::Matrix2d expected = delta_jump(-0.4) * zone_propagator(E, 0.0, gap) * delta_jump(1.1);
  CHECK((real_space_transfer(v, E) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("single attractive delta binds at -mu^2/4") {
  const double mu = 1.6;
  auto roots = oracle_bound_states(delta_array({{0.0, -mu}}));
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] + mu * mu / 4) < 1e-9);
  CHECK(oracle_bound_states(delta_array({{0.0, 1.0}, {1.0, 2.0}})).empty());
}

TEST_CASE("both channels closed") {
  PotentialSpec v = delta_array({{0.0, -1.0}}, 2.0);
  CHECK_THROWS_AS(oracle_amplitudes(v, 1.0), Error);
}

TEST_CASE("comb half-trace") {
  const double a = 0.8;
  for (double k : {0.3, 1.7, 5.2}) CHECK(std::abs(oracle_dispersion(0.0, a, k) - std::cos(2 * k * a)) < 1e-13);
  // alpha = 3, a = 1, k = 2 from the closed dispersion relation
  double k = 2.0, alpha = 3.0;
  double g = ((4 * k * k + alpha * alpha) * std::cos(2 * k) - alpha * alpha) / (4 * k * k);
  CHECK(std::abs(oracle_dispersion(alpha, 1.0, k) - g) < 1e-9);
}

TEST_CASE("log-scaled coefficient handles deep barriers") {
  PotentialSpec v;
  v.zone_boundaries = {0.0, 60.0};
  v.floors = {1.0, 25.0, 1.0};
  v.deltas = {};
  auto c = bound_state_coefficient(v, 0.5);
  CHECK(std::isfinite(c.scaled));
  CHECK(c.log_scale > 100.0);
}
