#pragma once

namespace polars {

struct Polar {
  double r = 0.0;
  double theta = 0.0;
};

struct Cartesian {
  double x = 0.0;
  double y = 0.0;
};

// theta = atan2(y, x) in (-pi, pi]; the origin maps to (0, 0).
Polar polar_from_cartesian(double x, double y) noexcept;

// Throws Error(kNegativeRadius) for r < 0.
Cartesian cartesian_from_polar(double r, double theta);

}  // namespace polars
