#include "curvlat/curvature.hpp"

#include <cmath>

#include "curvlat/errors.hpp"
#include "curvlat/kernels.hpp"

namespace curvlat {

SiteField curvature_map(const DiagonalMetric& metric, Execution exec) {
  const Grid2D& grid = metric.grid;
  if (grid.nx() < 5 || grid.ny() < 5) {
    throw PreconditionError("curvature_map: grid must be at least 5x5");
  }
  metric.validate();

  SiteField u = site_inverse_component(grid, metric.gxx_inv, LinkDir::x);
  SiteField v = site_inverse_component(grid, metric.gyy_inv, LinkDir::y);
  for (double& x : u.values()) x = -0.5 * std::log(x);
  for (double& x : v.values()) x = -0.5 * std::log(x);

  const kernels::CurvatureStencil stencil{grid.nx(), grid.ny(), grid.spacing(),
                                          grid.periodic(), u.values(),
                                          v.values()};
  SiteField k = make_site_field(grid);
  if (exec == Execution::serial) {
    kernels::serial::curvature(stencil, k.values());
  } else {
    kernels::parallel::curvature(stencil, k.values());
  }
  return k;
}

}  // namespace curvlat
