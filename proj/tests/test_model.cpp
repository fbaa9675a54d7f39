#include <cmath>

#include "doctest.h"
#include "support/testing.hpp"
#include "susydelta/model.hpp"

using namespace susydelta;
namespace ts = testing_support;

TEST_CASE("configuration JSON round trip") {
  const std::vector<ConfigKind> kinds = {DeltaStep{-2.0, 1.0},         DoubleEqual{2.0, 7.0},
                                         DoubleUnequal{2.0, 4.0, 7.0}, TripleUnequal{1.0, 2.0, 3.0, 0.5},
                                         TripleAlternating{3.0, 1.0},  AlternatingArray{1.5, 0.7, 3},
                                         AlternatingComb{3.0, 1.0}};
  for (const auto& k : kinds) CHECK(config_from_json(config_to_json(k)) == k);
}

TEST_CASE("invalid configurations are rejected") {
  auto code = [](const ConfigKind& k) {
    try {
      validate(k);
    } catch (const Error& e) {
      return static_cast<int>(e.code());
    }
    return -1;
  };
  CHECK(code(DoubleEqual{1.0, 0.0}) == static_cast<int>(Errc::invalid_configuration));
  CHECK(code(DeltaStep{0.0, 1.0}) == static_cast<int>(Errc::invalid_configuration));
  CHECK(code(AlternatingArray{1.0, 1.0, 0}) == static_cast<int>(Errc::invalid_configuration));
  CHECK(code(TripleUnequal{1.0, NAN, 1.0, 1.0}) == static_cast<int>(Errc::invalid_configuration));
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"kind", "square_well"}}), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"kind", "double_equal"}, {"alpha", 1.0}}), Error);
}

TEST_CASE("superpotential values and slopes") {
  Superpotential w = build_superpotential(DoubleEqual{2.0, 3.0});
  CHECK(w(0.0) == doctest::Approx(6.0));
  CHECK(w(-5.0) == doctest::Approx(6.0 + 2.0 * 2.0));
  CHECK(w.slope(-4.0) == -2.0);
  CHECK(w.slope(4.0) == 2.0);
  CHECK(w.v_plus() == 2.0);
  CHECK(w.v_minus() == 2.0);
  CHECK(w.continuity_defect() < 1e-12);
  CHECK_THROWS_AS(Superpotential({0.0, 1.0}, {1.0, 2.0, 3.0}, {0.0, 5.0}), Error);
}

TEST_CASE("partner potentials carry floors slope^2 and deltas (-1)^s W''") {
  Superpotential w = build_superpotential(DoubleUnequal{2.0, 4.0, 1.0});
  auto [v0, v1] = partner_potentials(w);
  CHECK(v0.floors == std::vector<double>{4.0, 0.0, 16.0});
  REQUIRE(v0.deltas.size() == 2);
  CHECK(v0.deltas[0].strength == 2.0);
  CHECK(v0.deltas[1].strength == 4.0);
  CHECK(v1.deltas[0].strength == -2.0);
  CHECK(v1.deltas[1].strength == -4.0);
}

TEST_CASE("delta step superpotential reproduces the floors of the step") {
  const double mu = 3.0, g = 5.0;
  PotentialSpec v = partner_potential(build_superpotential(DeltaStep{mu, g}), Sector::bosonic);
  CHECK(v.floor_right() - v.floor_left() == doctest::Approx(g));
  CHECK(v.strength_at(0) == doctest::Approx(mu));
}

TEST_CASE("alternating array with J = 1 is the alternating triple") {
  PotentialSpec a = partner_potential(build_superpotential(AlternatingArray{2.0, 0.8, 1}), Sector::bosonic);
  PotentialSpec b = partner_potential(build_superpotential(TripleAlternating{2.0, 0.8}), Sector::bosonic);
  CHECK(a.zone_boundaries == b.zone_boundaries);
  CHECK(a.floors == b.floors);
  for (std::size_t i = 0; i < a.zone_boundaries.size(); ++i) CHECK(a.strength_at(i) == b.strength_at(i));
}

TEST_CASE("alternating comb cell uses the eta-regularized constant") {
  const double alpha = 3.0, a = 1.0;
  Superpotential w = build_superpotential(AlternatingComb{alpha, a});
  REQUIRE(w.period().has_value());
  CHECK(*w.period() == 2 * a);
  CHECK(w(0.0) == doctest::Approx(-alpha * a / 4));
  CHECK(w(a) == doctest::Approx(alpha * a / 4));
  CHECK(w(2 * a) == doctest::Approx(w(0.0)));
  CHECK(w(7 * a + 0.3) == doctest::Approx(w(a + 0.3)));
  CHECK(w.slope(0.5 * a) == alpha / 2);
  CHECK(w.slope(1.5 * a) == -alpha / 2);
}

TEST_CASE("double-delta zero mode: plateau 1 and prefactor sqrt(alpha/(1+2 alpha a))") {
  const double alpha = 2.0, a = 7.0;
  ZeroMode z = zero_mode(build_superpotential(DoubleEqual{alpha, a}), Sector::fermionic);
  REQUIRE(z.normalizable);
  CHECK(!zero_mode(build_superpotential(DoubleEqual{alpha, a}), Sector::bosonic).normalizable);
  double n = std::sqrt(alpha / (1 + 2 * alpha * a));
  CHECK(std::abs(*z.norm_constant - n) < 1e-14);
  CHECK(std::abs(z(0.3) - n) < 1e-14);
  double q = ts::gauss_legendre_piecewise([&](double x) { return z(x) * z(x); }, {-a, a}, -a - 25, a + 25);
  CHECK(std::abs(q - 1.0) < 1e-12);
}

TEST_CASE("unequal double-delta zero mode prefactor") {
  const double alpha = 1.3, beta = 2.1, a = 0.9;
  ZeroMode z = zero_mode(build_superpotential(DoubleUnequal{alpha, beta, a}), Sector::fermionic);
  REQUIRE(z.normalizable);
  double n = std::sqrt(2 * alpha * beta / (alpha + 4 * a * alpha * beta + beta));
  CHECK(std::abs(*z.norm_constant - n) < 1e-14);
  double q = ts::gauss_legendre_piecewise([&](double x) { return z(x) * z(x); }, {-a, a}, -a - 40, a + 40);
  CHECK(std::abs(q - 1.0) < 1e-12);
}

TEST_CASE("periodic zero modes are never normalizable") {
  Superpotential w = build_superpotential(AlternatingComb{2.0, 1.0});
  CHECK(!zero_mode(w, Sector::bosonic).normalizable);
  CHECK(!zero_mode(w, Sector::fermionic).normalizable);
}

TEST_CASE("bare potentials") {
  PotentialSpec v = bare_potential(DeltaStep{-2.0, 1.0});
  CHECK(v.floors == std::vector<double>{0.0, 1.0});
  CHECK(v.strength_at(0) == -2.0);
  CHECK_THROWS_AS(bare_potential(TripleAlternating{1.0, 1.0}), Error);
}
