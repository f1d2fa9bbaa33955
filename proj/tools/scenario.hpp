#pragma once

#include <optional>
#include <string>

#include "config.hpp"
#include "curvlat/bloch.hpp"
#include "curvlat/conformal.hpp"
#include "curvlat/generators.hpp"
#include "curvlat/hopping.hpp"

namespace curvlat::cli {

/// A lattice scenario resolved from the "scenario" and "grid" config
/// sections. Trap scenarios keep their analytic family so metric output
/// can use it directly.
struct Scenario {
  std::string kind;
  std::optional<Grid2D> grid;
  std::optional<ConformalFamily> family;
  OnsiteMode onsite = OnsiteMode::laplacian;
  std::optional<TimeDependentHopping> model;
  std::optional<SupercellModel> supercell;
  /// Time at which snapshot-type outputs (hopping, metric) are taken.
  double t = 0.0;

  HoppingModel hopping() const;
  DiagonalMetric metric() const;
};

/// [t0, t1] is the time window the scenario must be valid on (scale
/// factors must stay positive there).
Scenario load_scenario(Section& root, double t0, double t1);

Grid2D load_grid(Section grid, int default_n);

/// Root key "onsite": "laplacian" (default) or "exact".
OnsiteMode load_onsite(Section& root);

SupercellModel load_supercell(Section model);

}  // namespace curvlat::cli
