#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "curvlat/grid.hpp"
#include "curvlat/lattice_operator.hpp"
#include "curvlat/metric.hpp"

namespace curvlat {

using cplx = std::complex<double>;

/// Lab field psi (what the atoms see, normalised by sum |psi|^2) or the
/// geometric field phi (normalised with the volume weight sqrt(g)).
enum class Representation { lab, geometric };

struct WaveState {
  Grid2D grid;
  Representation representation = Representation::lab;
  std::vector<cplx> amplitude;
  /// d/dt of the amplitude; only used by second-order evolution.
  std::vector<cplx> velocity;

  bool has_velocity() const { return !velocity.empty(); }
  double squared_norm() const;
  void normalize();
};

/// psi_n = g_n^{1/4} phi_n (to lab) or its inverse (to geometric). Velocity,
/// if present, is transformed the same way.
WaveState lab_field_transform(const WaveState& state,
                              const DiagonalMetric& metric,
                              Representation target);

/// Normalised Gaussian packet exp(-|r-c|^2/(4 w^2) + i p.(r-c)); `width`
/// is the standard deviation of |psi|^2. Requires width >= 2 l and
/// |p_x|, |p_y| <= pi / l.
WaveState gaussian_packet(const Grid2D& grid, Point center, double width,
                          Point momentum);

/// Normalised plane wave exp(i p.r).
WaveState plane_wave(const Grid2D& grid, Point momentum);

/// Moments of |psi_n|^2 (lab representation).
struct Observables {
  double norm = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double width_x = 0.0;
  double width_y = 0.0;
  /// <xy> - <x><y>
  double quadrupole = 0.0;
  /// <psi|H psi> / <psi|psi>, when an operator is supplied.
  std::optional<double> energy;
};

Observables observables(const WaveState& state,
                        const LatticeOperator* hamiltonian = nullptr);

}  // namespace curvlat
