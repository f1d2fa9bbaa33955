#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <span>

#include "curvlat/execution.hpp"
#include "curvlat/hopping.hpp"
#include "curvlat/kernels.hpp"

namespace curvlat {

/// Real symmetric single-particle Hamiltonian over lattice sites, stored
/// as CSR (at most 9 entries per row).
class LatticeOperator {
 public:
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

  explicit LatticeOperator(Sparse matrix);

  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const Sparse& matrix() const { return m_; }
  kernels::CsrView csr() const;

  void apply(std::span<const double> in, std::span<double> out,
             Execution exec = Execution::parallel) const;
  void apply(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out,
             Execution exec = Execution::parallel) const;

  /// Gershgorin bounds on the spectrum.
  double spectrum_upper_bound() const { return upper_; }
  double spectrum_lower_bound() const { return lower_; }
  /// max_n sum_m |H_nm|, an upper bound on the operator 2-norm.
  double norm_bound() const { return norm_bound_; }

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }

 private:
  Sparse m_;
  double upper_ = 0.0;
  double lower_ = 0.0;
  double norm_bound_ = 0.0;
};

/// H[n, m] = T on link (n, m), H[n, n] = V_n; open boundaries omit absent
/// links, periodic boundaries wrap.
LatticeOperator assemble_hamiltonian(const HoppingModel& hopping);

}  // namespace curvlat
