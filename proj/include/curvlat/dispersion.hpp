#pragma once

#include <span>
#include <vector>

#include "curvlat/bloch.hpp"
#include "curvlat/grid.hpp"

namespace curvlat {

/// E(p) = -2J sum_l cos(p_l d) + V0 for a hypercubic lattice of any
/// dimension (one entry of `p` per axis).
double dispersion_flat(double J, double V0, double d, std::span<const double> p);

/// Allowed momenta 2 pi k / (n d), k = 0..n-1, for a periodic axis.
std::vector<double> periodic_momenta(int n, double d);

/// All n_x * n_y dispersion values of a flat periodic lattice, ascending.
std::vector<double> flat_periodic_spectrum(const Grid2D& grid, double J, double V0);

struct BandSample {
  double p = 0.0;  // momentum magnitude
  double E = 0.0;
};

struct EffectiveMassFit {
  double mass = 0.0;
  double E0 = 0.0;
  int samples = 0;
};

/// Least-squares fit E = E0 + p^2 / (2 m) over the samples with |p| d < window
/// (default 0.3). Requires at least 5 such samples spanning two distinct |p|.
EffectiveMassFit effective_mass_fit(std::span<const BandSample> samples, double d,
                                    double window = 0.3);

struct DiracFit {
  double c = 0.0;            // effective velocity
  double rest_energy = 0.0;  // m c^2, half the minimal gap
  double p_star = 0.0;       // momentum of the gap minimum
  double max_relative_error = 0.0;
  int samples = 0;
};

/// Fits (E_upper - E_lower)^2 / 4 = (m c^2)^2 + c^2 dp^2 around the
/// minimum of the gap between `lower_band` and `lower_band + 1` over
/// |dp| <= window. Momentum differences wrap across the zone of period
/// 2 pi / d. Rejects windows that do not bracket the gap minimum.
DiracFit dirac_fit(const BandResult& bands, int lower_band, double d,
                   double window);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares_line(std::span<const double> x, std::span<const double> y);

}  // namespace curvlat
