#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "susydelta/model.hpp"

namespace susydelta::cli {

// Defaults used by every subcommand unless a flag overrides them.
//
//   energy grid (scatter)     [max outer floor + 0.01, max outer floor + 10], 200 points
//   k grid (bands)            [0, 14], scan step min(pi/(20a), alpha/50)
//   q samples (bands)         101
//   t list (witten)           0.1, 0.01, 0.001, 0.0001
//   root tolerance            1e-12 relative (bisection)
//   root scan samples         10000
//   match tolerance           1e-10
//   quadrature tolerance      1e-13 absolute
//   verify cases per family   100, seed 1
struct Defaults {
  static constexpr double energy_offset_lo = 0.01;
  static constexpr double energy_span = 10.0;
  static constexpr int energy_points = 200;
  static constexpr double k_max = 14.0;
  static constexpr int q_samples = 101;
  static constexpr double root_tol = 1e-12;
  static constexpr int scan_samples = 10000;
  static constexpr double match_tol = 1e-10;
  static constexpr double quadrature_tol = 1e-13;
  static constexpr int verify_cases = 100;
  static constexpr std::uint64_t seed = 1;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int n = 2;
  bool operator==(const GridSpec&) const = default;
};

struct Tolerances {
  double root = Defaults::root_tol;
  double match = Defaults::match_tol;
  double quadrature = Defaults::quadrature_tol;
  bool operator==(const Tolerances&) const = default;
};

struct RunConfig {
  std::optional<ConfigKind> config;
  std::optional<GridSpec> energy_grid;
  GridSpec k_grid{0.0, Defaults::k_max, 2};
  int q_samples = Defaults::q_samples;
  Tolerances tolerances;
  std::string format = "json";
  std::string out;  // empty: standard output

  bool operator==(const RunConfig&) const = default;
};

/// Throws Error(invalid_configuration) on grid counts < 2, non-positive tolerances or an
/// unknown format.
void validate(const RunConfig& rc);
nlohmann::json to_json(const RunConfig& rc);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Cross-check suite behind the verify subcommand.
nlohmann::json verify_report(std::uint64_t seed, int cases, int threads);

/// Exit codes: 0 success, 1 internal inconsistency, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace susydelta::cli
