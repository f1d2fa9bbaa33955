#pragma once

#include <optional>

#include "curvlat/grid.hpp"
#include "curvlat/metric.hpp"

namespace curvlat {

/// Rotationally symmetric conformal metric ds^2 = (dx^2 + dy^2) / Omega(r)
/// with Omega(r) = 1 + a r^2 + b r^4. These are the geometries produced by
/// a radial trap that rescales hopping by Omega.
class ConformalFamily {
 public:
  ConformalFamily(double a, double b);

  /// b = a^2/4: constant curvature K = 2a (sphere for a > 0, hyperbolic
  /// plane for a < 0).
  static ConformalFamily constant_curvature(double a) {
    return ConformalFamily(a, 0.25 * a * a);
  }

  double a() const { return a_; }
  double b() const { return b_; }

  double omega(double r) const {
    const double s = r * r;
    return 1.0 + a_ * s + b_ * s * s;
  }

  /// Smallest radius in [0, r_max] with Omega <= 0, if any.
  std::optional<double> degenerate_radius(double r_max) const;

 private:
  double a_;
  double b_;
};

/// Closed-form Gaussian curvature K = -e^{-2 sigma} Lap(sigma) with
/// e^{2 sigma} = 1/Omega, i.e. K = 2(a + 4 b r^2 + a b r^4) / Omega(r).
double family_curvature(const ConformalFamily& family, double r);

/// Proper length of the coordinate ray from 0 to r, the integral of
/// Omega^{-1/2}. Throws if Omega degenerates on [0, r].
double radial_proper_distance(const ConformalFamily& family, double r);

/// g^xx = g^yy = Omega at link midpoints; det_g = Omega(r_n)^{-2} at sites.
/// Throws PreconditionError naming the radius where Omega first vanishes
/// if the grid reaches it.
DiagonalMetric family_to_metric(const ConformalFamily& family,
                                const Grid2D& grid);

}  // namespace curvlat
