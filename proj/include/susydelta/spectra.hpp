#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "susydelta/model.hpp"
#include "susydelta/numerics.hpp"

namespace susydelta {

enum class StateKind { bound, anti_bound, threshold };
enum class Parity { even, odd, none };
/// supersymmetric: partner potentials V_s of the superpotential.
/// bare: the delta (and step) potential without the quasi-square well.
enum class Hamiltonian { supersymmetric, bare };

std::string to_string(StateKind k);
std::string to_string(Parity p);

struct SpectralEquation {
  std::function<double(double)> residual;
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::string label;
  Parity parity = Parity::none;
};

/// One zone of a piecewise elementary function. Interior zones carry (psi, psi') at x0 and
/// evolve with cos/sin, cosh/sinh or linear bases; tails are value * e^{rate (x - anchor)}.
struct WaveZone {
  enum class Type { left_tail, interior, right_tail };
  Type type = Type::interior;
  double x0 = 0.0;
  double x1 = 0.0;
  double floor = 0.0;
  double value = 0.0;
  double slope = 0.0;
  double rate = 0.0;
};

class PiecewiseWavefunction {
 public:
  PiecewiseWavefunction() = default;
  PiecewiseWavefunction(double energy, std::vector<WaveZone> zones);

  double operator()(double x) const;
  double derivative(double x) const;
  /// limits at boundary i from the left and from the right
  double value_left(std::size_t i) const;
  double value_right(std::size_t i) const;
  double derivative_left(std::size_t i) const;
  double derivative_right(std::size_t i) const;

  /// closed-form integral of psi^2 zone by zone; +inf when a tail does not decay
  double norm_squared() const;
  void scale(double c);

  double energy() const { return energy_; }
  const std::vector<double>& boundaries() const { return boundaries_; }
  const std::vector<WaveZone>& zones() const { return zones_; }
  /// a window that holds all but ~e^{-2 decay_lengths} of a decaying state
  std::pair<double, double> support(double decay_lengths = 20.0) const;

 private:
  std::size_t zone_index(double x) const;
  double eval(const WaveZone& z, double x, bool derivative) const;

  double energy_ = 0.0;
  std::vector<WaveZone> zones_;
  std::vector<double> boundaries_;
};

struct BoundState {
  double energy = 0.0;
  double kappa_left = 0.0;
  double kappa_right = 0.0;
  std::optional<double> inner_momentum;
  Parity parity = Parity::none;
  Sector sector = Sector::bosonic;
  StateKind kind = StateKind::bound;
  bool normalized = false;
  std::string label;
  PiecewiseWavefunction wavefunction;
};

struct SpectrumOptions {
  ScanOptions scan;
  bool include_anti_bound = false;
  Hamiltonian hamiltonian = Hamiltonian::supersymmetric;
};

/// |kappa| at or below this is a threshold state
inline constexpr double kThresholdKappa = 1e-9;

PotentialSpec hamiltonian_potential(const ConfigKind& kind, Sector s, Hamiltonian h);
std::vector<SpectralEquation> spectral_residuals(const ConfigKind& kind, Sector s,
                                                 Hamiltonian h = Hamiltonian::supersymmetric);
std::vector<BoundState> find_bound_states(const ConfigKind& kind, Sector s, const SpectrumOptions& opt = {});

struct StateParams {
  double energy = 0.0;
  bool left_decays = true;
  bool right_decays = true;
};

struct WavefunctionResult {
  PiecewiseWavefunction psi;
  StateKind kind = StateKind::bound;
  bool normalized = false;
};

/// Real initial-value construction from the left tail through every zone.
/// Decaying states are normalized; the others come back unnormalized and flagged.
WavefunctionResult build_wavefunction(const StateParams& state, const ConfigKind& kind, Sector s,
                                      Hamiltonian h = Hamiltonian::supersymmetric);
WavefunctionResult build_wavefunction(const StateParams& state, const PotentialSpec& v);

/// Normalized closed forms where the configuration has one (double_equal, double_unequal,
/// bare delta_step). Sign convention follows the displayed forms.
std::optional<std::function<double(double)>> closed_form_wavefunction(const ConfigKind& kind, Sector s,
                                                                      double energy, Parity parity,
                                                                      Hamiltonian h = Hamiltonian::supersymmetric);

Parity detect_parity(const PiecewiseWavefunction& psi, double tol = 1e-6);

/// max |phi - c psi1| / max |phi| with phi = (d/dx - W') psi0 and c fitted by least squares,
/// sampled away from the kinks of W
double intertwining_defect(const PiecewiseWavefunction& psi0, const PiecewiseWavefunction& psi1,
                           const Superpotential& w, int samples = 2001);

struct PairEntry {
  std::size_t bosonic = 0;
  std::size_t fermionic = 0;
  double energy_gap = 0.0;
  double intertwining_defect = 0.0;
};

struct PairingReport {
  std::vector<BoundState> states;  // bosonic states first, then fermionic, each sorted
  std::vector<PairEntry> pairs;
  std::vector<std::size_t> singlets;
};

/// Throws Error(inconsistency) when a positive-energy state has no partner within 1e-9 or the
/// intertwining defect exceeds 1e-6.
PairingReport susy_pairing_report(const ConfigKind& kind, const SpectrumOptions& opt = {});

}  // namespace susydelta
