#include "curvlat/conformal.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "curvlat/errors.hpp"

namespace curvlat {

ConformalFamily::ConformalFamily(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError("ConformalFamily: a and b must be finite");
  }
}

std::optional<double> ConformalFamily::degenerate_radius(double r_max) const {
  // Omega as a polynomial in s = r^2: b s^2 + a s + 1, positive at s = 0.
  const double s_max = r_max * r_max;
  double root = std::numeric_limits<double>::infinity();
  if (b_ == 0.0) {
    if (a_ < 0.0) root = -1.0 / a_;
  } else {
    const double disc = a_ * a_ - 4.0 * b_;
    if (disc >= 0.0) {
      // Stable roots; q carries the sign of a so no cancellation occurs.
      const double q = -0.5 * (a_ + std::copysign(std::sqrt(disc), a_));
      for (double s : {q / b_, q != 0.0 ? 1.0 / q : -1.0}) {
        if (s >= 0.0 && s < root) root = s;
      }
    }
  }
  if (root <= s_max) return std::sqrt(root);
  return std::nullopt;
}

double family_curvature(const ConformalFamily& family, double r) {
  const double om = family.omega(r);
  if (!(om > 0.0)) {
    throw PreconditionError("family_curvature: Omega <= 0 at r = " +
                            std::to_string(r));
  }
  const double a = family.a();
  const double b = family.b();
  const double s = r * r;
  return 2.0 * (a + 4.0 * b * s + a * b * s * s) / om;
}

double radial_proper_distance(const ConformalFamily& family, double r) {
  if (!(r >= 0.0)) {
    throw PreconditionError("radial_proper_distance: r must be non-negative");
  }
  if (auto rd = family.degenerate_radius(r)) {
    throw PreconditionError("radial_proper_distance: Omega vanishes at r = " +
                            std::to_string(*rd) + " inside [0, " +
                            std::to_string(r) + "]");
  }
  if (r == 0.0) return 0.0;
  auto integrand = [&](double rr) { return 1.0 / std::sqrt(family.omega(rr)); };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, r, 20, 1e-14, &error);
}

DiagonalMetric family_to_metric(const ConformalFamily& family,
                                const Grid2D& grid) {
  // Periodic wrap links have midpoints half a cell outside the site box.
  const double reach = grid.bounding_radius() +
                       (grid.periodic() ? grid.spacing() * std::sqrt(2.0) : 0.0);
  if (auto rd = family.degenerate_radius(reach)) {
    std::ostringstream msg;
    msg << "family_to_metric: Omega = 1 + " << family.a() << " r^2 + "
        << family.b() << " r^4 vanishes at r = " << *rd
        << " inside the grid (bounding radius " << reach << ")";
    throw PreconditionError(msg.str());
  }
  auto omega_at = [&](Point p) {
    return family.omega(std::hypot(p.x, p.y));
  };
  LinkField gxx = make_link_field(grid, LinkDir::x);
  for (int j = 0; j < gxx.rows(); ++j)
    for (int i = 0; i < gxx.cols(); ++i)
      gxx(i, j) = omega_at(link_midpoint(grid, LinkDir::x, i, j));
  LinkField gyy = make_link_field(grid, LinkDir::y);
  for (int j = 0; j < gyy.rows(); ++j)
    for (int i = 0; i < gyy.cols(); ++i)
      gyy(i, j) = omega_at(link_midpoint(grid, LinkDir::y, i, j));
  SiteField det = make_site_field(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double om = omega_at(grid.position({i, j}));
      det(i, j) = 1.0 / (om * om);
    }
  }
  return DiagonalMetric{grid, std::move(gxx), std::move(gyy), std::move(det)};
}

}  // namespace curvlat
