#include "curvlat/dispersion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "curvlat/errors.hpp"

namespace curvlat {

double dispersion_flat(double J, double V0, double d, std::span<const double> p) {
  double e = V0;
  for (double pl : p) e -= 2.0 * J * std::cos(pl * d);
  return e;
}

std::vector<double> periodic_momenta(int n, double d) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    p[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / (n * d);
  }
  return p;
}

std::vector<double> flat_periodic_spectrum(const Grid2D& grid, double J, double V0) {
  const double d = grid.spacing();
  const auto px = periodic_momenta(grid.nx(), d);
  const auto py = periodic_momenta(grid.ny(), d);
  std::vector<double> e;
  e.reserve(grid.size());
  for (double y : py) {
    for (double x : px) {
      const double p[2] = {x, y};
      e.push_back(dispersion_flat(J, V0, d, p));
    }
  }
  std::sort(e.begin(), e.end());
  return e;
}

EffectiveMassFit effective_mass_fit(std::span<const BandSample> samples, double d,
                                    double window) {
  std::vector<double> x;
  std::vector<double> y;
  std::set<double> distinct;
  for (const auto& s : samples) {
    if (std::abs(s.p) * d < window) {
      x.push_back(s.p * s.p);
      y.push_back(s.E);
      distinct.insert(std::abs(s.p));
    }
  }
  if (x.size() < 5 || distinct.size() < 2) {
    throw PreconditionError(
        "effective_mass_fit: degenerate fit window (need >= 5 samples and two "
        "distinct |p| inside the window)");
  }
  const LineFit f = least_squares_line(x, y);
  if (!(f.slope > 0.0)) {
    throw PreconditionError("effective_mass_fit: band is not a minimum at p = 0");
  }
  return {1.0 / (2.0 * f.slope), f.intercept, static_cast<int>(x.size())};
}

LineFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("least_squares_line: need matching samples, at least 2");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = x[static_cast<std::size_t>(i)];
    b[i] = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  return {c[1], c[0]};
}

DiracFit dirac_fit(const BandResult& bands, int lower_band, double d,
                   double window) {
  if (bands.dimension != 1) {
    throw PreconditionError("dirac_fit: only 1D band results are supported");
  }
  if (lower_band < 0 || lower_band + 1 >= bands.band_count()) {
    throw PreconditionError("dirac_fit: need two adjacent bands");
  }
  if (!(window > 0.0) || !(d > 0.0)) {
    throw PreconditionError("dirac_fit: window and spacing must be positive");
  }
  const auto nk = bands.momenta.size();
  std::vector<double> half_gap(nk);
  std::size_t kmin = 0;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    half_gap[k] = 0.5 * (bands.energies(row, lower_band + 1) -
                         bands.energies(row, lower_band));
    if (half_gap[k] < half_gap[kmin]) kmin = k;
  }
  const double p_star = bands.momenta[kmin].x;
  const double period = 2.0 * std::numbers::pi / d;

  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> dps;
  bool below = false;
  bool above = false;
  for (std::size_t k = 0; k < nk; ++k) {
    const double dp = std::remainder(bands.momenta[k].x - p_star, period);
    if (std::abs(dp) > window) continue;
    below |= dp < 0.0;
    above |= dp > 0.0;
    x.push_back(dp * dp);
    y.push_back(half_gap[k] * half_gap[k]);
    dps.push_back(dp);
  }
  if (!below || !above || x.size() < 3) {
    throw PreconditionError("dirac_fit: no local gap minimum inside the window");
  }
  const LineFit f = least_squares_line(x, y);
  DiracFit out;
  out.p_star = p_star;
  out.c = std::sqrt(std::max(f.slope, 0.0));
  out.rest_energy = std::sqrt(std::max(f.intercept, 0.0));
  out.samples = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double model = std::sqrt(out.rest_energy * out.rest_energy +
                                   out.c * out.c * x[i]);
    const double sample = std::sqrt(y[i]);
    const double scale = std::max(sample, 1e-300);
    out.max_relative_error =
        std::max(out.max_relative_error, std::abs(model - sample) / scale);
  }
  return out;
}

}  // namespace curvlat
