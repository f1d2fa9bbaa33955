#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`.
//
// Row-wise kernels (CSR apply, stencils, axpy) produce bit-identical
// results in both versions. Reductions in `parallel` sum fixed-size blocks
// and then combine the block partials in order, so their result does not
// depend on the thread count; they may differ from the serial loop in the
// last bits.

#include <complex>
#include <cstddef>
#include <span>

namespace curvlat::kernels {

using cplx = std::complex<double>;

/// Non-owning compressed-sparse-row view (Eigen RowMajor layout).
struct CsrView {
  std::span<const int> row_ptr;
  std::span<const int> col;
  std::span<const double> val;

  std::size_t rows() const { return row_ptr.empty() ? 0 : row_ptr.size() - 1; }
};

/// Inputs for the log-metric curvature stencil: u = ln sqrt(g_xx) and
/// v = ln sqrt(g_yy) on sites, row-major nx*ny.
struct CurvatureStencil {
  int nx = 0;
  int ny = 0;
  double spacing = 1.0;
  bool periodic = false;
  std::span<const double> u;
  std::span<const double> v;
};

inline constexpr std::size_t kReductionBlock = 2048;

namespace serial {

void csr_apply(const CsrView& a, std::span<const double> in,
               std::span<double> out);
void csr_apply(const CsrView& a, std::span<const cplx> in,
               std::span<cplx> out);

double dot(std::span<const double> a, std::span<const double> b);
/// sum conj(a_n) b_n
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);

/// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

/// Gaussian curvature on sites; NaN on the one-cell open-boundary margin.
void curvature(const CurvatureStencil& s, std::span<double> out);

}  // namespace serial

namespace parallel {

void csr_apply(const CsrView& a, std::span<const double> in,
               std::span<double> out);
void csr_apply(const CsrView& a, std::span<const cplx> in,
               std::span<cplx> out);

double dot(std::span<const double> a, std::span<const double> b);
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

void curvature(const CurvatureStencil& s, std::span<double> out);

}  // namespace parallel

/// Applies CURVLAT_THREADS (if set) as the OpenMP thread cap. Returns the
/// resulting maximum thread count.
int configure_threads_from_env();

}  // namespace curvlat::kernels
