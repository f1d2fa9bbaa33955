#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "curvlat/execution.hpp"
#include "curvlat/grid.hpp"

namespace curvlat {

struct SupercellHop {
  std::array<int, 2> cell_offset{0, 0};  // target cell minus source cell
  int from = 0;
  int to = 0;
  double amplitude = 0.0;
};

/// Periodic tight-binding model with `basis` sites per cell. The hopping
/// list must contain every reverse entry (-offset, to, from) with the same
/// amplitude.
struct SupercellModel {
  int dimension = 1;  // 1 or 2
  Point a1{1.0, 0.0};
  Point a2{0.0, 1.0};
  int basis = 1;
  std::vector<double> onsite;
  std::vector<SupercellHop> hoppings;
  /// Optional intra-cell positions; they only change the Bloch gauge.
  std::vector<Point> positions;

  void validate() const;
};

struct BandResult {
  int dimension = 1;
  std::vector<Point> momenta;
  Eigen::MatrixXd energies;  // momenta.size() x basis, ascending per row

  int band_count() const { return static_cast<int>(energies.cols()); }
};

/// Symmetric grid of `count` momenta covering [-pi/d, pi/d] inclusive.
std::vector<double> zone_axis(int count, double d);
std::vector<Point> zone_line(int count, double d);
std::vector<Point> zone_grid(int count_x, int count_y, double dx, double dy);

/// S x S Bloch matrix H(p) = sum T exp(i p . (R + tau_to - tau_from)) + diag(V).
Eigen::MatrixXcd bloch_matrix(const SupercellModel& model, Point p);

BandResult bloch_bands(const SupercellModel& model,
                       const std::vector<Point>& momenta,
                       Execution exec = Execution::parallel);

SupercellModel simple_chain(double J, double d, double onsite = 0.0);
/// Two sites per cell: J1 inside the cell, J2 between cells. Hopping
/// amplitudes are -J1 and -J2.
SupercellModel dimerized_chain(double J1, double J2, double d,
                               double onsite = 0.0);

}  // namespace curvlat
