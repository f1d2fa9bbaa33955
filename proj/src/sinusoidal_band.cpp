#include "curvlat/sinusoidal_band.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <exception>

#include "curvlat/dispersion.hpp"
#include "curvlat/errors.hpp"

namespace curvlat {

namespace {

// V0 sin^2(x) = V0/2 - V0/4 (e^{2ix} + e^{-2ix}): in the basis
// exp(i (q + 2m) x) the Hamiltonian is tridiagonal.
double band_energy(double V0, double q, int band_index, int modes) {
  const int half = modes / 2;
  const int n = 2 * half + 1;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off = Eigen::VectorXd::Constant(n - 1, -V0 / 4.0);
  for (int m = -half; m <= half; ++m) {
    const double k = q + 2.0 * m;
    diag[m + half] = k * k + V0 / 2.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[band_index];
}

}  // namespace

SinusoidalBand sinusoidal_band_fixed(double V0, int band_index, int modes) {
  if (!(V0 >= 0.0) || !std::isfinite(V0)) {
    throw PreconditionError("sinusoidal_band: V0 must be finite and >= 0");
  }
  if (band_index < 0 || band_index >= modes / 2) {
    throw PreconditionError("sinusoidal_band: band index out of range");
  }
  // Period of the potential is pi, so the zone edge sits at q = 1.
  const double centre = band_energy(V0, 0.0, band_index, modes);
  const double edge = band_energy(V0, 1.0, band_index, modes);
  SinusoidalBand b;
  b.V0 = V0;
  b.E_min = std::min(centre, edge);
  b.E_max = std::max(centre, edge);
  b.J = (b.E_max - b.E_min) / 4.0;
  b.modes = modes;
  return b;
}

SinusoidalBand sinusoidal_band(double V0, int band_index, int modes, int max_modes) {
  if (modes < 64) {
    throw PreconditionError("sinusoidal_band: plane-wave cutoff must be >= 64");
  }
  SinusoidalBand prev = sinusoidal_band_fixed(V0, band_index, modes);
  double shift = 0.0;
  for (int m = 2 * modes; m <= max_modes; m *= 2) {
    SinusoidalBand next = sinusoidal_band_fixed(V0, band_index, m);
    shift = std::max(std::abs(next.E_min - prev.E_min),
                     std::abs(next.E_max - prev.E_max));
    if (shift <= 1e-8) return prev;
    prev = next;
  }
  throw NumericalError("sinusoidal_band (plane-wave cutoff)", shift, max_modes);
}

std::vector<SinusoidalBand> tunneling_scan(std::span<const double> V0, int band_index) {
  std::vector<SinusoidalBand> out(V0.size());
  std::vector<std::exception_ptr> errors(V0.size());
  const auto n = static_cast<std::ptrdiff_t>(V0.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = sinusoidal_band(V0[k], band_index);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double tunneling_log_slope(std::span<const SinusoidalBand> scan) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& b : scan) {
    if (!(b.J > 0.0)) {
      throw PreconditionError("tunneling_log_slope: band width must be positive");
    }
    x.push_back(std::sqrt(b.V0));
    y.push_back(std::log(b.J));
  }
  return least_squares_line(x, y).slope;
}

}  // namespace curvlat
