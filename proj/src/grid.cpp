#include "curvlat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "curvlat/errors.hpp"

namespace curvlat {

Grid2D::Grid2D(int nx, int ny, double spacing, Boundary boundary, Point origin)
    : nx_(nx), ny_(ny), spacing_(spacing), boundary_(boundary), origin_(origin) {
  if (nx < 2 || ny < 2) {
    throw PreconditionError("Grid2D: site counts must be >= 2 (got " +
                            std::to_string(nx) + "x" + std::to_string(ny) +
                            ")");
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw PreconditionError("Grid2D: spacing must be positive and finite");
  }
  if (boundary == Boundary::periodic && (nx < 3 || ny < 3)) {
    throw PreconditionError("Grid2D: periodic boundary requires nx, ny >= 3");
  }
}

Grid2D Grid2D::centered(int nx, int ny, double spacing, Boundary boundary) {
  const Point origin{-0.5 * (nx - 1) * spacing, -0.5 * (ny - 1) * spacing};
  return Grid2D(nx, ny, spacing, boundary, origin);
}

double Grid2D::bounding_radius() const {
  const double xs[2] = {x(0), x(nx_ - 1)};
  const double ys[2] = {y(0), y(ny_ - 1)};
  double r2 = 0.0;
  for (double xv : xs) {
    for (double yv : ys) {
      r2 = std::max(r2, xv * xv + yv * yv);
    }
  }
  return std::sqrt(r2);
}

Site Grid2D::nearest_site(Point p) const {
  const Site s{static_cast<int>(std::lround((p.x - origin_.x) / spacing_)),
               static_cast<int>(std::lround((p.y - origin_.y) / spacing_))};
  if (!contains(s)) {
    throw PreconditionError("Grid2D: point (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ") lies outside the grid");
  }
  return s;
}

std::pair<int, int> link_extent(const Grid2D& grid, LinkDir dir) {
  const bool per = grid.periodic();
  const int nx = grid.nx();
  const int ny = grid.ny();
  switch (dir) {
    case LinkDir::x:
      return {per ? nx : nx - 1, ny};
    case LinkDir::y:
      return {nx, per ? ny : ny - 1};
    case LinkDir::diag_up:
    case LinkDir::diag_down:
      return {per ? nx : nx - 1, per ? ny : ny - 1};
  }
  return {0, 0};
}

std::pair<Site, Site> link_ends(const Grid2D& grid, LinkDir dir, int i, int j) {
  const int i1 = (i + 1) % grid.nx();
  const int j1 = (j + 1) % grid.ny();
  switch (dir) {
    case LinkDir::x:
      return {{i, j}, {i1, j}};
    case LinkDir::y:
      return {{i, j}, {i, j1}};
    case LinkDir::diag_up:
      return {{i, j}, {i1, j1}};
    case LinkDir::diag_down:
      return {{i, j1}, {i1, j}};
  }
  return {};
}

Point link_midpoint(const Grid2D& grid, LinkDir dir, int i, int j) {
  switch (dir) {
    case LinkDir::x:
      return {grid.x(i + 0.5), grid.y(j)};
    case LinkDir::y:
      return {grid.x(i), grid.y(j + 0.5)};
    case LinkDir::diag_up:
    case LinkDir::diag_down:
      return {grid.x(i + 0.5), grid.y(j + 0.5)};
  }
  return {};
}

SiteField make_site_field(const Grid2D& grid, double value) {
  return SiteField(grid.nx(), grid.ny(), value);
}

LinkField make_link_field(const Grid2D& grid, LinkDir dir, double value) {
  const auto [c, r] = link_extent(grid, dir);
  return LinkField(c, r, value);
}

bool matches_site_shape(const Grid2D& grid, const SiteField& f) {
  return f.cols() == grid.nx() && f.rows() == grid.ny();
}

bool matches_link_shape(const Grid2D& grid, LinkDir dir, const LinkField& f) {
  const auto [c, r] = link_extent(grid, dir);
  return f.cols() == c && f.rows() == r;
}

}  // namespace curvlat
