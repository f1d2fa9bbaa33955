#include "curvlat/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace curvlat::kernels {

namespace {

template <typename T>
inline T row_product(const CsrView& a, std::span<const T> in, std::size_t r) {
  T acc{};
  const int end = a.row_ptr[r + 1];
  for (int k = a.row_ptr[r]; k < end; ++k) {
    acc += a.val[static_cast<std::size_t>(k)] *
           in[static_cast<std::size_t>(a.col[static_cast<std::size_t>(k)])];
  }
  return acc;
}

// One site of the curvature stencil. Caller guarantees the neighbours exist.
inline double curvature_at(const CurvatureStencil& s, int i, int j) {
  const int nx = s.nx;
  const int ny = s.ny;
  const int ip = (i + 1) % nx;
  const int im = (i + nx - 1) % nx;
  const int jp = (j + 1) % ny;
  const int jm = (j + ny - 1) % ny;
  auto at = [nx](std::span<const double> f, int ii, int jj) {
    return f[static_cast<std::size_t>(jj) * static_cast<std::size_t>(nx) +
             static_cast<std::size_t>(ii)];
  };
  const double u0 = at(s.u, i, j);
  const double v0 = at(s.v, i, j);
  const double w0 = v0 - u0;
  const double h2 = s.spacing * s.spacing;

  // d/dx (e^{v-u} v_x), flux form on the half-links.
  const double uxp = at(s.u, ip, j), vxp = at(s.v, ip, j);
  const double uxm = at(s.u, im, j), vxm = at(s.v, im, j);
  const double fx = (std::exp(0.5 * (vxp - uxp + w0)) * (vxp - v0) -
                     std::exp(0.5 * (vxm - uxm + w0)) * (v0 - vxm)) /
                    h2;
  // d/dy (e^{u-v} u_y)
  const double uyp = at(s.u, i, jp), vyp = at(s.v, i, jp);
  const double uym = at(s.u, i, jm), vym = at(s.v, i, jm);
  const double fy = (std::exp(0.5 * (uyp - vyp - w0)) * (uyp - u0) -
                     std::exp(0.5 * (uym - vym - w0)) * (u0 - uym)) /
                    h2;
  return -std::exp(-u0 - v0) * (fx + fy);
}

inline bool curvature_defined(const CurvatureStencil& s, int i, int j) {
  return s.periodic || (i > 0 && j > 0 && i < s.nx - 1 && j < s.ny - 1);
}

template <typename T, typename BlockFn>
T blocked_sum(std::size_t n, BlockFn block_fn) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    partial[static_cast<std::size_t>(b)] = block_fn(lo, hi);
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

namespace serial {

void csr_apply(const CsrView& a, std::span<const double> in,
               std::span<double> out) {
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = row_product(a, in, r);
}

void csr_apply(const CsrView& a, std::span<const cplx> in,
               std::span<cplx> out) {
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = row_product(a, in, r);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) acc += a[n] * b[n];
  return acc;
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{};
  for (std::size_t n = 0; n < a.size(); ++n) acc += std::conj(a[n]) * b[n];
  return acc;
}

double squared_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& z : a) acc += std::norm(z);
  return acc;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t n = 0; n < x.size(); ++n) y[n] += alpha * x[n];
}

void curvature(const CurvatureStencil& s, std::span<double> out) {
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      out[static_cast<std::size_t>(j) * static_cast<std::size_t>(s.nx) +
          static_cast<std::size_t>(i)] =
          curvature_defined(s, i, j) ? curvature_at(s, i, j)
                                     : std::numeric_limits<double>::quiet_NaN();
    }
  }
}

}  // namespace serial

namespace parallel {

void csr_apply(const CsrView& a, std::span<const double> in,
               std::span<double> out) {
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] =
        row_product(a, in, static_cast<std::size_t>(r));
  }
}

void csr_apply(const CsrView& a, std::span<const cplx> in,
               std::span<cplx> out) {
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] =
        row_product(a, in, static_cast<std::size_t>(r));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t n = lo; n < hi; ++n) acc += a[n] * b[n];
    return acc;
  });
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  return blocked_sum<cplx>(a.size(), [&](std::size_t lo, std::size_t hi) {
    cplx acc{};
    for (std::size_t n = lo; n < hi; ++n) acc += std::conj(a[n]) * b[n];
    return acc;
  });
}

double squared_norm(std::span<const cplx> a) {
  return blocked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t n = lo; n < hi; ++n) acc += std::norm(a[n]);
    return acc;
  });
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    y[static_cast<std::size_t>(k)] += alpha * x[static_cast<std::size_t>(k)];
  }
}

void curvature(const CurvatureStencil& s, std::span<double> out) {
#pragma omp parallel for schedule(static)
  for (int j = 0; j < s.ny; ++j) {
    for (int i = 0; i < s.nx; ++i) {
      out[static_cast<std::size_t>(j) * static_cast<std::size_t>(s.nx) +
          static_cast<std::size_t>(i)] =
          curvature_defined(s, i, j) ? curvature_at(s, i, j)
                                     : std::numeric_limits<double>::quiet_NaN();
    }
  }
}

}  // namespace parallel

int configure_threads_from_env() {
  if (const char* env = std::getenv("CURVLAT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) omp_set_num_threads(n);
    } catch (const std::exception&) {
      // Ignore malformed values and keep the OpenMP default.
    }
  }
  return omp_get_max_threads();
}

}  // namespace curvlat::kernels
