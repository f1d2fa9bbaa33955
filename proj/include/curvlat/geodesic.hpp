#pragma once

#include "curvlat/metric.hpp"

namespace curvlat {

/// Geodesic distance from `source` by first-order fast marching on
///   g^xx (d_x u)^2 + g^yy (d_y u)^2 = 1
/// with the 4-neighbour upwind quadratic update. Each update uses the
/// inverse-metric value on the link toward the upwind neighbour.
SiteField geodesic_distance_map(const DiagonalMetric& metric, Site source);

/// Dijkstra shortest paths on the nearest-neighbour graph with edge length
/// spacing / sqrt(g^dd). Diagnostic only: paths are restricted to axis
/// steps, so off-axis distances carry a Manhattan-type bias (up to a factor
/// sqrt(2) along diagonals in flat space).
SiteField graph_distance_map(const DiagonalMetric& metric, Site source);

}  // namespace curvlat
