#pragma once

#include "curvlat/grid.hpp"

namespace curvlat {

/// Diagonal 2D metric sampled on a lattice: inverse-metric components on the
/// links of matching orientation (g^xx on x-links, g^yy on y-links) and the
/// determinant g = det g_ij on sites.
struct DiagonalMetric {
  Grid2D grid;
  LinkField gxx_inv;
  LinkField gyy_inv;
  SiteField det_g;

  /// Builds the metric from link data alone; det_g is the geometric-mean
  /// site value (see `site_inverse_component`).
  static DiagonalMetric from_links(const Grid2D& grid, LinkField gxx_inv,
                                   LinkField gyy_inv);

  static DiagonalMetric flat(const Grid2D& grid);

  /// Throws PreconditionError on shape mismatch or a non-positive entry.
  void validate() const;
};

/// Site value of g^dd as the geometric mean of the adjacent d-oriented links.
/// Open-edge sites extrapolate ln g^dd linearly from the two nearest links. `dir` must be LinkDir::x or LinkDir::y.
SiteField site_inverse_component(const Grid2D& grid, const LinkField& links,
                                 LinkDir dir);

/// det_g_n = 1 / (G^xx_n G^yy_n) with G the site geometric means.
SiteField determinant_from_links(const Grid2D& grid, const LinkField& gxx_inv,
                                 const LinkField& gyy_inv);

}  // namespace curvlat
