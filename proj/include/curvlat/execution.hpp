#pragma once

namespace curvlat {

/// Selects the serial reference kernels or their OpenMP counterparts.
enum class Execution { serial, parallel };

}  // namespace curvlat
