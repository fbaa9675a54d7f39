#include "susydelta/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace susydelta {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::invalid_configuration, msg);
}

void require_finite(std::initializer_list<double> xs) {
  for (double x : xs) require(std::isfinite(x), "configuration parameters must be finite");
}

// eta(-1) from zeta(-1) = -1/12
constexpr double kEtaMinusOne = -0.25;

}  // namespace

void validate(const ConfigKind& kind) {
  std::visit(overloaded{
                 [](const DeltaStep& c) {
                   require_finite({c.mu, c.g});
                   require(c.mu != 0.0, "delta_step: mu must be nonzero");
                 },
                 [](const DoubleEqual& c) {
                   require_finite({c.alpha, c.a});
                   require(c.a > 0.0, "double_equal: a must be positive");
                 },
                 [](const DoubleUnequal& c) {
                   require_finite({c.alpha, c.beta, c.a});
                   require(c.a > 0.0, "double_unequal: a must be positive");
                 },
                 [](const TripleUnequal& c) {
                   require_finite({c.alpha, c.mu, c.beta, c.a});
                   require(c.a > 0.0, "triple_unequal: a must be positive");
                 },
                 [](const TripleAlternating& c) {
                   require_finite({c.alpha, c.a});
                   require(c.a > 0.0, "triple_alternating: a must be positive");
                 },
                 [](const AlternatingArray& c) {
                   require_finite({c.alpha, c.a});
                   require(c.a > 0.0, "alternating_array: a must be positive");
                   require(c.J >= 1, "alternating_array: J must be at least 1");
                 },
                 [](const AlternatingComb& c) {
                   require_finite({c.alpha, c.a});
                   require(c.a > 0.0, "alternating_comb: a must be positive");
                 },
             },
             kind);
}

std::string kind_name(const ConfigKind& kind) {
  return std::visit(overloaded{
                        [](const DeltaStep&) { return "delta_step"; },
                        [](const DoubleEqual&) { return "double_equal"; },
                        [](const DoubleUnequal&) { return "double_unequal"; },
                        [](const TripleUnequal&) { return "triple_unequal"; },
                        [](const TripleAlternating&) { return "triple_alternating"; },
                        [](const AlternatingArray&) { return "alternating_array"; },
                        [](const AlternatingComb&) { return "alternating_comb"; },
                    },
                    kind);
}

bool is_reflection_symmetric(const ConfigKind& kind) {
  return std::visit(overloaded{
                        [](const DeltaStep& c) { return c.g == 0.0; },
                        [](const DoubleEqual&) { return true; },
                        [](const DoubleUnequal& c) { return c.alpha == c.beta; },
                        [](const TripleUnequal& c) { return c.alpha == c.beta; },
                        [](const TripleAlternating&) { return true; },
                        [](const AlternatingArray&) { return true; },
                        [](const AlternatingComb&) { return false; },
                    },
                    kind);
}

double length_scale(const ConfigKind& kind) {
  return std::visit(overloaded{
                        [](const DeltaStep& c) { return 1.0 / std::abs(c.mu); },
                        [](const AlternatingArray& c) { return c.a; },
                        [](const auto& c) { return c.a; },
                    },
                    kind);
}

nlohmann::json config_to_json(const ConfigKind& kind) {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  std::visit(overloaded{
                 [&](const DeltaStep& c) {
                   j["mu"] = c.mu;
                   j["g"] = c.g;
                 },
                 [&](const DoubleEqual& c) {
                   j["alpha"] = c.alpha;
                   j["a"] = c.a;
                 },
                 [&](const DoubleUnequal& c) {
                   j["alpha"] = c.alpha;
                   j["beta"] = c.beta;
                   j["a"] = c.a;
                 },
                 [&](const TripleUnequal& c) {
                   j["alpha"] = c.alpha;
                   j["mu"] = c.mu;
                   j["beta"] = c.beta;
                   j["a"] = c.a;
                 },
                 [&](const TripleAlternating& c) {
                   j["alpha"] = c.alpha;
                   j["a"] = c.a;
                 },
                 [&](const AlternatingArray& c) {
                   j["alpha"] = c.alpha;
                   j["a"] = c.a;
                   j["J"] = c.J;
                 },
                 [&](const AlternatingComb& c) {
                   j["alpha"] = c.alpha;
                   j["a"] = c.a;
                 },
             },
             kind);
  return j;
}

ConfigKind config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "configuration must be a JSON object");
  require(j.contains("kind") && j["kind"].is_string(), "configuration needs a string \"kind\"");
  auto num = [&](const char* key) {
    require(j.contains(key) && j[key].is_number(), std::string("missing numeric field \"") + key + "\"");
    return j[key].get<double>();
  };
  const std::string k = j["kind"].get<std::string>();
  ConfigKind out;
  if (k == "delta_step") {
    out = DeltaStep{num("mu"), j.contains("g") ? num("g") : 0.0};
  } else if (k == "double_equal") {
    out = DoubleEqual{num("alpha"), num("a")};
  } else if (k == "double_unequal") {
    out = DoubleUnequal{num("alpha"), num("beta"), num("a")};
  } else if (k == "triple_unequal") {
    out = TripleUnequal{num("alpha"), num("mu"), num("beta"), num("a")};
  } else if (k == "triple_alternating") {
    out = TripleAlternating{num("alpha"), num("a")};
  } else if (k == "alternating_array") {
    require(j.contains("J") && j["J"].is_number_integer(), "alternating_array needs integer \"J\"");
    out = AlternatingArray{num("alpha"), num("a"), j["J"].get<int>()};
  } else if (k == "alternating_comb") {
    out = AlternatingComb{num("alpha"), num("a")};
  } else {
    throw Error(Errc::invalid_configuration, "unknown configuration kind \"" + k + "\"");
  }
  validate(out);
  return out;
}

bool operator==(const DeltaStep& x, const DeltaStep& y) { return x.mu == y.mu && x.g == y.g; }
bool operator==(const DoubleEqual& x, const DoubleEqual& y) { return x.alpha == y.alpha && x.a == y.a; }
bool operator==(const DoubleUnequal& x, const DoubleUnequal& y) {
  return x.alpha == y.alpha && x.beta == y.beta && x.a == y.a;
}
bool operator==(const TripleUnequal& x, const TripleUnequal& y) {
  return x.alpha == y.alpha && x.mu == y.mu && x.beta == y.beta && x.a == y.a;
}
bool operator==(const TripleAlternating& x, const TripleAlternating& y) {
  return x.alpha == y.alpha && x.a == y.a;
}
bool operator==(const AlternatingArray& x, const AlternatingArray& y) {
  return x.alpha == y.alpha && x.a == y.a && x.J == y.J;
}
bool operator==(const AlternatingComb& x, const AlternatingComb& y) {
  return x.alpha == y.alpha && x.a == y.a;
}

// ---------------------------------------------------------------------------

Superpotential::Superpotential() : slopes_{0.0} {}

Superpotential::Superpotential(std::vector<double> breakpoints, std::vector<double> slopes,
                               std::vector<double> values, std::optional<double> period)
    : breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)),
      values_(std::move(values)),
      period_(period) {
  require(slopes_.size() == breakpoints_.size() + 1, "superpotential: need one slope per zone");
  require(values_.size() == breakpoints_.size(), "superpotential: need one value per breakpoint");
  require(std::is_sorted(breakpoints_.begin(), breakpoints_.end()) &&
              std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) == breakpoints_.end(),
          "superpotential: breakpoints must be strictly increasing");
  for (double s : slopes_) require(std::isfinite(s), "superpotential: slopes must be finite");
  if (period_) {
    require(*period_ > 0.0 && !breakpoints_.empty(), "superpotential: bad period");
    require(breakpoints_.back() - breakpoints_.front() < *period_,
            "superpotential: breakpoints must fit in one period");
    require(slopes_.front() == slopes_.back(), "superpotential: periodic tails must agree");
  }
  require(continuity_defect() <= 1e-12, "superpotential: values violate continuity");
  origin_value_ = breakpoints_.empty() ? 0.0 : values_.front();
}

Superpotential Superpotential::from_slopes(std::vector<double> breakpoints,
                                           std::vector<double> slopes, double first_value,
                                           std::optional<double> period) {
  std::vector<double> values;
  values.reserve(breakpoints.size());
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (i == 0)
      values.push_back(first_value);
    else
      values.push_back(values.back() + slopes[i] * (breakpoints[i] - breakpoints[i - 1]));
  }
  return Superpotential(std::move(breakpoints), std::move(slopes), std::move(values), period);
}

double Superpotential::wrap(double x) const {
  if (!period_) return x;
  double x0 = breakpoints_.front();
  double r = std::fmod(x - x0, *period_);
  if (r < 0) r += *period_;
  return x0 + r;
}

std::size_t Superpotential::zone(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

double Superpotential::operator()(double x) const {
  if (breakpoints_.empty()) return origin_value_ + slopes_[0] * x;
  x = wrap(x);
  std::size_t z = zone(x);
  if (z == 0) return values_[0] + slopes_[0] * (x - breakpoints_[0]);
  return values_[z - 1] + slopes_[z] * (x - breakpoints_[z - 1]);
}

double Superpotential::slope(double x) const {
  if (breakpoints_.empty()) return slopes_[0];
  return slopes_[zone(wrap(x))];
}

std::vector<double> Superpotential::slope_jumps() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) out.push_back(slopes_[i + 1] - slopes_[i]);
  return out;
}

double Superpotential::continuity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    double expect = values_[i - 1] + slopes_[i] * (breakpoints_[i] - breakpoints_[i - 1]);
    double scale = std::max({1.0, std::abs(expect), std::abs(values_[i])});
    worst = std::max(worst, std::abs(expect - values_[i]) / scale);
  }
  if (period_) {
    // W(x0 + P) from the right tail must come back to W(x0)
    double back = values_.back() + slopes_.back() * (breakpoints_.front() + *period_ - breakpoints_.back());
    double scale = std::max({1.0, std::abs(back), std::abs(values_.front())});
    worst = std::max(worst, std::abs(back - values_.front()) / scale);
  }
  return worst;
}

Superpotential build_superpotential(const ConfigKind& kind) {
  validate(kind);
  return std::visit(
      overloaded{
          [](const DeltaStep& c) {
            double shift = c.g / (2.0 * c.mu);
            return Superpotential::from_slopes({0.0}, {-c.mu / 2 + shift, c.mu / 2 + shift}, 0.0);
          },
          [](const DoubleEqual& c) {
            return Superpotential::from_slopes({-c.a, c.a}, {-c.alpha, 0.0, c.alpha}, c.alpha * c.a);
          },
          [](const DoubleUnequal& c) {
            return Superpotential::from_slopes({-c.a, c.a}, {-c.alpha, 0.0, c.beta},
                                               (c.alpha + c.beta) * c.a / 2);
          },
          [](const TripleUnequal& c) {
            double h = c.mu / 2;
            return Superpotential::from_slopes({-c.a, 0.0, c.a},
                                               {-c.alpha - h, -h, h, c.beta + h},
                                               (c.alpha + c.mu + c.beta) * c.a / 2);
          },
          [](const TripleAlternating& c) {
            double h = c.alpha / 2;
            return Superpotential::from_slopes({-c.a, 0.0, c.a}, {h, -h, h, -h}, -h * c.a);
          },
          [](const AlternatingArray& c) {
            // W = (alpha/2) sum_{n=-J..J} (-1)^n |x - n a|
            std::vector<double> bps, slopes;
            double h = c.alpha / 2;
            double tail = (c.J % 2 == 0) ? h : -h;
            slopes.push_back(-tail);
            double w0 = 0.0;
            for (int n = -c.J; n <= c.J; ++n) {
              double sgn = (n % 2 == 0) ? 1.0 : -1.0;
              bps.push_back(n * c.a);
              slopes.push_back(slopes.back() + 2 * h * sgn);
              w0 += h * sgn * (n + c.J) * c.a;
            }
            return Superpotential::from_slopes(std::move(bps), std::move(slopes), w0);
          },
          [](const AlternatingComb& c) {
            double h = c.alpha / 2;
            // cell form with the eta(-1) constant: W(0) = (alpha/2) * 2a * eta(-1)
            double w0 = h * 2.0 * c.a * kEtaMinusOne;
            return Superpotential::from_slopes({0.0, c.a}, {-h, h, -h}, w0, 2.0 * c.a);
          },
      },
      kind);
}

// ---------------------------------------------------------------------------

double PotentialSpec::strength_at(std::size_t boundary) const {
  double x = zone_boundaries.at(boundary);
  for (const auto& d : deltas)
    if (d.position == x) return d.strength;
  return 0.0;
}

double PotentialSpec::floor_at(double x) const {
  auto z = std::upper_bound(zone_boundaries.begin(), zone_boundaries.end(), x) - zone_boundaries.begin();
  return floors[static_cast<std::size_t>(z)];
}

void PotentialSpec::validate() const {
  require(floors.size() == zone_boundaries.size() + 1, "potential: need one floor per zone");
  require(std::is_sorted(zone_boundaries.begin(), zone_boundaries.end()), "potential: boundaries must be sorted");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    require(deltas[i].position > deltas[i - 1].position, "potential: delta positions must increase");
  for (const auto& d : deltas)
    require(std::find(zone_boundaries.begin(), zone_boundaries.end(), d.position) != zone_boundaries.end(),
            "potential: every delta must sit on a zone boundary");
}

PotentialSpec free_potential() { return PotentialSpec{}; }

PotentialSpec delta_array(std::vector<PointInteraction> deltas, double floor) {
  std::sort(deltas.begin(), deltas.end(),
            [](const PointInteraction& x, const PointInteraction& y) { return x.position < y.position; });
  PotentialSpec p;
  for (const auto& d : deltas) p.zone_boundaries.push_back(d.position);
  p.floors.assign(deltas.size() + 1, floor);
  p.deltas = std::move(deltas);
  p.validate();
  return p;
}

PotentialSpec partner_potential(const Superpotential& w, Sector s) {
  PotentialSpec p;
  p.zone_boundaries = w.breakpoints();
  p.floors.clear();
  for (double m : w.slopes()) p.floors.push_back(m * m);
  auto jumps = w.slope_jumps();
  for (std::size_t i = 0; i < jumps.size(); ++i)
    if (jumps[i] != 0.0) p.deltas.push_back({w.breakpoints()[i], sector_sign(s) * jumps[i]});
  p.period = w.period();
  return p;
}

std::pair<PotentialSpec, PotentialSpec> partner_potentials(const Superpotential& w) {
  return {partner_potential(w, Sector::bosonic), partner_potential(w, Sector::fermionic)};
}

PotentialSpec bare_potential(const ConfigKind& kind) {
  validate(kind);
  return std::visit(
      overloaded{
          [](const DeltaStep& c) {
            PotentialSpec p;
            p.zone_boundaries = {0.0};
            p.floors = {0.0, c.g};
            p.deltas = {{0.0, c.mu}};
            return p;
          },
          [](const DoubleEqual& c) { return delta_array({{-c.a, c.alpha}, {c.a, c.alpha}}); },
          [](const DoubleUnequal& c) { return delta_array({{-c.a, c.alpha}, {c.a, c.beta}}); },
          [&kind](const auto&) -> PotentialSpec {
            throw Error(Errc::unsupported_configuration,
                        "no bare potential defined for " + kind_name(kind));
          },
      },
      kind);
}

// ---------------------------------------------------------------------------

double ZeroMode::operator()(double x) const {
  double e = sector_sign(sector) * (w(x) - offset);
  return norm_constant.value_or(1.0) * std::exp(e);
}

double ZeroMode::derivative(double x) const { return sector_sign(sector) * w.slope(x) * (*this)(x); }

ZeroMode zero_mode(const Superpotential& w, Sector s) {
  ZeroMode z;
  z.sector = s;
  z.w = w;
  double sg = sector_sign(s);
  // e^{sg W} decays on the left iff sg * slope_left > 0, on the right iff sg * slope_right < 0
  bool left_ok = sg * w.slopes().front() > kNormalizabilityThreshold;
  bool right_ok = sg * w.slopes().back() < -kNormalizabilityThreshold;
  z.normalizable = !w.period() && left_ok && right_ok;
  if (!z.normalizable) return z;

  const auto& b = w.breakpoints();
  const auto& v = w.values();
  double peak = -INFINITY;
  for (double val : v) peak = std::max(peak, sg * val);
  z.offset = sg * peak;

  // integral of e^{2 sg (W - offset)} zone by zone
  double total = 0.0;
  auto e = [&](std::size_t i) { return 2.0 * (sg * v[i] - peak); };
  total += std::exp(e(0)) / (2.0 * sg * w.slopes().front());
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    double m = 2.0 * sg * w.slopes()[i + 1];
    double len = b[i + 1] - b[i];
    if (m == 0.0)
      total += std::exp(e(i)) * len;
    else
      total += std::exp(e(i)) * std::expm1(m * len) / m;
  }
  total += std::exp(e(b.size() - 1)) / (-2.0 * sg * w.slopes().back());
  z.norm_constant = 1.0 / std::sqrt(total);
  return z;
}

}  // namespace susydelta
