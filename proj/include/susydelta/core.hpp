#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace susydelta {

using cdouble = std::complex<double>;

enum class Sector : int { bosonic = 0, fermionic = 1 };

/// (-1)^s
inline double sector_sign(Sector s) { return s == Sector::bosonic ? 1.0 : -1.0; }
inline int sector_index(Sector s) { return static_cast<int>(s); }
Sector sector_from_index(int s);

enum class Errc {
  invalid_configuration,
  pole,
  map_singular,
  partial_s_matrix,
  no_scattering,
  unsupported_configuration,
  invalid_state,
  inconsistency,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// sqrt(E - floor) with Im >= 0: real for open channels, i*kappa for closed ones.
cdouble channel_momentum(double energy, double floor);

}  // namespace susydelta
