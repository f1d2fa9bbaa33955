#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "curvlat/grid.hpp"
#include "curvlat/metric.hpp"

namespace testing_support {

// Smooth positive link field exp(sum of random low Fourier modes), the
// generator behind the metric property tests.
inline curvlat::LinkField smooth_links(const curvlat::Grid2D& grid, curvlat::LinkDir dir,
                                       std::mt19937_64& rng, double amplitude = 0.3) {
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> wave(1, 3);
  struct Mode {
    double a, kx, ky, ph;
  };
  Mode modes[4];
  for (auto& m : modes) {
    m = {amp(rng), static_cast<double>(wave(rng)), static_cast<double>(wave(rng)), phase(rng)};
  }
  curvlat::LinkField f = curvlat::make_link_field(grid, dir);
  const double span = grid.nx() * grid.spacing();
  for (int j = 0; j < f.rows(); ++j) {
    for (int i = 0; i < f.cols(); ++i) {
      const curvlat::Point p = curvlat::link_midpoint(grid, dir, i, j);
      double s = 0.0;
      for (const auto& m : modes) {
        s += m.a * std::sin(2.0 * std::numbers::pi * (m.kx * p.x + m.ky * p.y) / span + m.ph);
      }
      f(i, j) = std::exp(s);
    }
  }
  return f;
}

inline curvlat::DiagonalMetric random_metric(const curvlat::Grid2D& grid, std::mt19937_64& rng,
                                             double amplitude = 0.3) {
  return curvlat::DiagonalMetric::from_links(
      grid, smooth_links(grid, curvlat::LinkDir::x, rng, amplitude),
      smooth_links(grid, curvlat::LinkDir::y, rng, amplitude));
}

}  // namespace testing_support
