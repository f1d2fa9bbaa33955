#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvlat/lattice_operator.hpp"

namespace curvlat {

enum class EigenMethod {
  automatic,    // dense below `dense_limit` sites, shift-invert Lanczos above
  dense,        // full symmetric eigendecomposition
  lanczos,      // Lanczos on H itself
  shift_invert  // Lanczos on (H - shift)^{-1} with a sparse Cholesky factor
};

struct EigenOptions {
  EigenMethod method = EigenMethod::automatic;
  std::size_t dense_limit = 5000;
  /// Shift for shift-invert. When unset a first pass from below the
  /// Gershgorin bound locates the lowest eigenvalue and the shift is placed
  /// just under it.
  std::optional<double> shift;
  /// Accept a pair when ||H v - lambda v|| <= tolerance * ||H||.
  double tolerance = 1e-8;
  int initial_basis = 60;
  int max_basis = 600;
  int max_runs = 40;
  std::uint64_t seed = 0x5eed;
};

struct EigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, unit norm
  std::vector<double> residuals;
  EigenMethod method = EigenMethod::dense;
};

/// The k smallest eigenpairs of a real symmetric lattice operator.
/// Lanczos runs use full reorthogonalisation and restart with explicit
/// deflation against locked vectors, so degenerate eigenvalues are
/// recovered with their multiplicity. Throws NumericalError with the best
/// achieved residual if the requested pairs do not converge.
EigenResult lowest_eigenpairs(const LatticeOperator& h, int k,
                              const EigenOptions& options = {});

}  // namespace curvlat
