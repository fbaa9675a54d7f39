#include "susydelta/core.hpp"

#include <cmath>

namespace susydelta {

Sector sector_from_index(int s) {
  if (s == 0) return Sector::bosonic;
  if (s == 1) return Sector::fermionic;
  throw Error(Errc::invalid_configuration, "sector must be 0 or 1");
}

cdouble channel_momentum(double energy, double floor) {
  double d = energy - floor;
  if (d >= 0.0) return {std::sqrt(d), 0.0};
  return {0.0, std::sqrt(-d)};
}

}  // namespace susydelta
