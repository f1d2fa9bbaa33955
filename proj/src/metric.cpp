#include "curvlat/metric.hpp"

#include <cmath>
#include <string>

#include "curvlat/errors.hpp"

namespace curvlat {

namespace {

void require_positive(const LinkField& f, const char* name) {
  for (double v : f.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError(std::string("DiagonalMetric: ") + name +
                              " must be strictly positive and finite (found " +
                              std::to_string(v) + ")");
    }
  }
}

}  // namespace

SiteField site_inverse_component(const Grid2D& grid, const LinkField& links,
                                 LinkDir dir) {
  SiteField out = make_site_field(grid);
  const bool along_x = dir == LinkDir::x;
  const int n_along = along_x ? grid.nx() : grid.ny();
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const int k = along_x ? i : j;
      auto at = [&](int kk) {
        return along_x ? links(kk, j) : links(i, kk);
      };
      double value;
      if (grid.periodic()) {
        value = std::sqrt(at((k + n_along - 1) % n_along) * at(k));
      } else if (n_along == 2) {
        value = at(0);
      } else if (k == 0) {
        // Log-linear extrapolation from the two nearest links.
        value = std::exp(1.5 * std::log(at(0)) - 0.5 * std::log(at(1)));
      } else if (k == n_along - 1) {
        value = std::exp(1.5 * std::log(at(n_along - 2)) -
                         0.5 * std::log(at(n_along - 3)));
      } else {
        value = std::sqrt(at(k - 1) * at(k));
      }
      out(i, j) = value;
    }
  }
  return out;
}

SiteField determinant_from_links(const Grid2D& grid, const LinkField& gxx_inv,
                                 const LinkField& gyy_inv) {
  const SiteField gx = site_inverse_component(grid, gxx_inv, LinkDir::x);
  const SiteField gy = site_inverse_component(grid, gyy_inv, LinkDir::y);
  SiteField det = make_site_field(grid);
  for (std::size_t n = 0; n < det.size(); ++n) {
    det.values()[n] = 1.0 / (gx.values()[n] * gy.values()[n]);
  }
  return det;
}

DiagonalMetric DiagonalMetric::from_links(const Grid2D& grid, LinkField gxx_inv,
                                          LinkField gyy_inv) {
  if (!matches_link_shape(grid, LinkDir::x, gxx_inv) ||
      !matches_link_shape(grid, LinkDir::y, gyy_inv)) {
    throw PreconditionError("DiagonalMetric: link field shape does not match grid");
  }
  require_positive(gxx_inv, "gxx_inv");
  require_positive(gyy_inv, "gyy_inv");
  SiteField det = determinant_from_links(grid, gxx_inv, gyy_inv);
  return DiagonalMetric{grid, std::move(gxx_inv), std::move(gyy_inv),
                        std::move(det)};
}

DiagonalMetric DiagonalMetric::flat(const Grid2D& grid) {
  return DiagonalMetric{grid, make_link_field(grid, LinkDir::x, 1.0),
                        make_link_field(grid, LinkDir::y, 1.0),
                        make_site_field(grid, 1.0)};
}

void DiagonalMetric::validate() const {
  if (!matches_link_shape(grid, LinkDir::x, gxx_inv) ||
      !matches_link_shape(grid, LinkDir::y, gyy_inv) ||
      !matches_site_shape(grid, det_g)) {
    throw PreconditionError("DiagonalMetric: field shape does not match grid");
  }
  require_positive(gxx_inv, "gxx_inv");
  require_positive(gyy_inv, "gyy_inv");
  for (double v : det_g.values()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw PreconditionError("DiagonalMetric: det_g must be strictly positive");
    }
  }
}

}  // namespace curvlat
