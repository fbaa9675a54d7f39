#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "susydelta/core.hpp"

namespace susydelta {

// Configurations. Strengths in 1/length, positions in length, hbar = 2m = 1.

struct DeltaStep {
  double mu = 1.0;
  double g = 0.0;
};

struct DoubleEqual {
  double alpha = 1.0;
  double a = 1.0;
};

struct DoubleUnequal {
  double alpha = 1.0;
  double beta = 2.0;
  double a = 1.0;
};

struct TripleUnequal {
  double alpha = 1.0;
  double mu = 2.0;
  double beta = 3.0;
  double a = 1.0;
};

struct TripleAlternating {
  double alpha = 1.0;
  double a = 1.0;
};

struct AlternatingArray {
  double alpha = 1.0;
  double a = 1.0;
  int J = 1;
};

struct AlternatingComb {
  double alpha = 1.0;
  double a = 1.0;
};

using ConfigKind = std::variant<DeltaStep, DoubleEqual, DoubleUnequal, TripleUnequal,
                                TripleAlternating, AlternatingArray, AlternatingComb>;

/// Throws Error(invalid_configuration) on a <= 0, mu == 0 in DeltaStep, J < 1 or non-finite input.
void validate(const ConfigKind& kind);
std::string kind_name(const ConfigKind& kind);
/// Mirror symmetric under x -> -x.
bool is_reflection_symmetric(const ConfigKind& kind);
/// Typical length used for finite-difference steps and plotting windows.
double length_scale(const ConfigKind& kind);

nlohmann::json config_to_json(const ConfigKind& kind);
ConfigKind config_from_json(const nlohmann::json& j);
bool operator==(const DeltaStep&, const DeltaStep&);
bool operator==(const DoubleEqual&, const DoubleEqual&);
bool operator==(const DoubleUnequal&, const DoubleUnequal&);
bool operator==(const TripleUnequal&, const TripleUnequal&);
bool operator==(const TripleAlternating&, const TripleAlternating&);
bool operator==(const AlternatingArray&, const AlternatingArray&);
bool operator==(const AlternatingComb&, const AlternatingComb&);

/// Continuous piecewise-linear W. slopes[0] is the left tail, slopes.back() the right tail.
/// With a period P the function repeats with period P starting at breakpoints[0].
class Superpotential {
 public:
  /// W = 0.
  Superpotential();
  /// values[i] = W(breakpoints[i]); checked against slope integration to 1e-12 relative.
  Superpotential(std::vector<double> breakpoints, std::vector<double> slopes,
                 std::vector<double> values, std::optional<double> period = std::nullopt);
  static Superpotential from_slopes(std::vector<double> breakpoints, std::vector<double> slopes,
                                    double first_value,
                                    std::optional<double> period = std::nullopt);

  double operator()(double x) const;
  /// W'(x), right-continuous at kinks.
  double slope(double x) const;
  double v_plus() const { return slopes_.back(); }
  double v_minus() const { return -slopes_.front(); }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  const std::vector<double>& values() const { return values_; }
  std::optional<double> period() const { return period_; }
  /// Slope jump at every breakpoint, i.e. the weight of W'' there.
  std::vector<double> slope_jumps() const;
  /// max relative mismatch between stored values and slope integration
  double continuity_defect() const;

 private:
  double wrap(double x) const;
  std::size_t zone(double x) const;

  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> values_;
  std::optional<double> period_;
  double origin_value_ = 0.0;
};

Superpotential build_superpotential(const ConfigKind& kind);

struct PointInteraction {
  double position = 0.0;
  double strength = 0.0;
};

/// Piecewise-constant floors plus deltas sitting on zone boundaries.
/// floors.size() == zone_boundaries.size() + 1.
struct PotentialSpec {
  std::vector<double> zone_boundaries;
  std::vector<double> floors{0.0};
  std::vector<PointInteraction> deltas;
  std::optional<double> period;

  double floor_left() const { return floors.front(); }
  double floor_right() const { return floors.back(); }
  /// delta strength at boundary i (0 when no delta sits there)
  double strength_at(std::size_t boundary) const;
  double floor_at(double x) const;
  /// Throws invalid_configuration on size mismatch, unsorted data or stray deltas.
  void validate() const;
};

PotentialSpec free_potential();
/// Deltas at given points with a constant floor.
PotentialSpec delta_array(std::vector<PointInteraction> deltas, double floor = 0.0);
PotentialSpec partner_potential(const Superpotential& w, Sector s);
std::pair<PotentialSpec, PotentialSpec> partner_potentials(const Superpotential& w);
/// Potential of the configuration without the quasi-square well (DeltaStep, DoubleEqual,
/// DoubleUnequal only): V = strengths times deltas, plus the step g for DeltaStep.
PotentialSpec bare_potential(const ConfigKind& kind);

/// e^{+W} (bosonic) or e^{-W} (fermionic).
/// Normalizable: N e^{+-(W - W_ext)} with unit L2 norm. Otherwise raw e^{+-W}.
struct ZeroMode {
  Sector sector = Sector::bosonic;
  bool normalizable = false;
  std::optional<double> norm_constant;
  double offset = 0.0;
  Superpotential w;

  double operator()(double x) const;
  double derivative(double x) const;
};

/// tail slopes closer to zero than this are treated as non-decaying
inline constexpr double kNormalizabilityThreshold = 1e-12;

ZeroMode zero_mode(const Superpotential& w, Sector s);

}  // namespace susydelta
