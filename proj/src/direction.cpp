#include "bellsim/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellsim {

Direction::Direction(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 1e-12) || !std::isfinite(n)) {
    throw std::invalid_argument("Direction: vector must be nonzero and finite");
  }
  // Skip the division for already-unit input so that normalizing is
  // idempotent: re-parsing a serialized direction must not drift by an ulp.
  if (std::abs(n - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) {
    x_ = x;
    y_ = y;
    z_ = z;
  } else {
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
  }
}

double Direction::angle_to(const Direction& other) const {
  return std::acos(std::clamp(dot(other), -1.0, 1.0));
}

}  // namespace bellsim
