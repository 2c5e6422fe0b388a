#include "polars/polar.hpp"

#include <cmath>
#include <string>

#include "polars/error.hpp"

namespace polars {

Polar polar_from_cartesian(double x, double y) noexcept {
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};
  // atan2(-0.0, x < 0) would give -pi, which lies outside (-pi, pi].
  if (y == 0.0) y = 0.0;
  return {std::hypot(x, y), std::atan2(y, x)};
}

Cartesian cartesian_from_polar(double r, double theta) {
  if (!(r >= 0.0)) {
    throw Error(ErrorCode::kNegativeRadius,
                "radius must be non-negative, got " + std::to_string(r));
  }
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace polars
