#pragma once

#include <optional>

#include "curvlat/grid.hpp"
#include "curvlat/metric.hpp"
#include "curvlat/schedule.hpp"

namespace curvlat {

/// Single-particle hopping model on a lattice: amplitudes T on
/// nearest-neighbour links (and optionally on the two diagonal families)
/// plus on-site energies V. Standard sign convention: T < 0, so the
/// assembled matrix is a discretised -Laplacian.
struct HoppingModel {
  Grid2D grid;
  LinkField t_x;
  LinkField t_y;
  SiteField onsite;
  std::optional<LinkField> t_diag_up;
  std::optional<LinkField> t_diag_down;
  /// Descriptor of the schedule this snapshot was generated from, if any.
  std::optional<Schedule> schedule;

  bool has_diagonals() const { return t_diag_up.has_value(); }

  /// Shapes consistent with the grid, all values finite, diagonal families
  /// present together or not at all.
  void validate() const;

  /// Every hopping amplitude (nearest-neighbour and diagonal) strictly
  /// negative.
  bool standard_sign() const;
};

/// On-site rule for the metric -> hopping map.
///  - laplacian: V_n = sum_d g^dd_{n+d/2} / l^2 (weighted graph Laplacian).
///  - exact: each summand also carries (g_{n+d}/g_n)^{1/4}; the operator is
///    then the discrete Dirichlet form in the lab field psi = g^{1/4} phi and
///    annihilates psi = g^{1/4}.
enum class OnsiteMode { laplacian, exact };

/// T on link (n, n+d) = -g^dd_{n+d/2} / l^2.
HoppingModel metric_to_hopping(const DiagonalMetric& metric, OnsiteMode mode);

/// g^dd_{n+d/2} = l^2 |T|; V is ignored. Requires strictly negative
/// nearest-neighbour hopping and no diagonal links. Exact inverse of
/// metric_to_hopping whenever l^2 is a power of two; within one ulp
/// otherwise.
DiagonalMetric hopping_to_metric(const HoppingModel& hopping);

/// sum of |T| over the links touching each site (diagonals included).
SiteField incident_hopping_sum(const HoppingModel& hopping);

}  // namespace curvlat
