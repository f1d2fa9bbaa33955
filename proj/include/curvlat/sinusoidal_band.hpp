#pragma once

#include <span>
#include <vector>

namespace curvlat {

/// Band of the 1D problem -d^2/dx^2 + V0 sin^2(k x) in recoil units
/// (k = 1, E_R = 1).
struct SinusoidalBand {
  double V0 = 0.0;
  double E_min = 0.0;
  double E_max = 0.0;
  double J = 0.0;  // (E_max - E_min) / 4
  int modes = 0;   // plane waves used after convergence
};

/// Plane-wave expansion at the zone centre and edge. Starts from `modes`
/// plane waves (at least 64) and doubles until both band edges move by at
/// most 1e-8; throws NumericalError past `max_modes`.
SinusoidalBand sinusoidal_band(double V0_over_ER, int band_index = 0,
                               int modes = 64, int max_modes = 4096);

/// Edges at a fixed number of plane waves, without the convergence loop.
SinusoidalBand sinusoidal_band_fixed(double V0_over_ER, int band_index, int modes);

std::vector<SinusoidalBand> tunneling_scan(std::span<const double> V0_over_ER,
                                           int band_index = 0);

/// Regression slope of ln J against sqrt(V0) over the scan.
double tunneling_log_slope(std::span<const SinusoidalBand> scan);

}  // namespace curvlat
