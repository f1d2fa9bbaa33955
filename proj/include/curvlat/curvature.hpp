#pragma once

#include "curvlat/execution.hpp"
#include "curvlat/metric.hpp"

namespace curvlat {

/// Gaussian curvature of a diagonal metric at sites, using the orthogonal
/// coordinate formula on the log scale factors u = ln sqrt(g_xx),
/// v = ln sqrt(g_yy):
///   K = -e^{-u-v} [ d_x(e^{v-u} v_x) + d_y(e^{u-v} u_y) ].
/// Second-order accurate. On open grids the one-cell margin is NaN.
/// Requires nx, ny >= 5.
SiteField curvature_map(const DiagonalMetric& metric,
                        Execution exec = Execution::parallel);

}  // namespace curvlat
