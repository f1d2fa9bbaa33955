#include "curvlat/lattice_operator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "curvlat/errors.hpp"

namespace curvlat {

LatticeOperator::LatticeOperator(Sparse matrix) : m_(std::move(matrix)) {
  m_.makeCompressed();
  upper_ = -std::numeric_limits<double>::infinity();
  lower_ = std::numeric_limits<double>::infinity();
  for (int r = 0; r < m_.outerSize(); ++r) {
    double diag = 0.0;
    double off = 0.0;
    double abs_sum = 0.0;
    for (Sparse::InnerIterator it(m_, r); it; ++it) {
      abs_sum += std::abs(it.value());
      if (it.col() == r) {
        diag += it.value();
      } else {
        off += std::abs(it.value());
      }
    }
    upper_ = std::max(upper_, diag + off);
    lower_ = std::min(lower_, diag - off);
    norm_bound_ = std::max(norm_bound_, abs_sum);
  }
}

kernels::CsrView LatticeOperator::csr() const {
  const auto rows = static_cast<std::size_t>(m_.rows());
  const auto nnz = static_cast<std::size_t>(m_.nonZeros());
  return {{m_.outerIndexPtr(), rows + 1},
          {m_.innerIndexPtr(), nnz},
          {m_.valuePtr(), nnz}};
}

void LatticeOperator::apply(std::span<const double> in, std::span<double> out,
                            Execution exec) const {
  if (exec == Execution::serial) {
    kernels::serial::csr_apply(csr(), in, out);
  } else {
    kernels::parallel::csr_apply(csr(), in, out);
  }
}

void LatticeOperator::apply(std::span<const std::complex<double>> in,
                            std::span<std::complex<double>> out,
                            Execution exec) const {
  if (exec == Execution::serial) {
    kernels::serial::csr_apply(csr(), in, out);
  } else {
    kernels::parallel::csr_apply(csr(), in, out);
  }
}

LatticeOperator assemble_hamiltonian(const HoppingModel& hopping) {
  hopping.validate();
  const Grid2D& grid = hopping.grid;
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(grid.size() * 9);

  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const int n = static_cast<int>(grid.index(i, j));
      triplets.emplace_back(n, n, hopping.onsite(i, j));
    }
  }
  auto add = [&](LinkDir dir, const LinkField& t) {
    const auto [cols, rows] = link_extent(grid, dir);
    for (int j = 0; j < rows; ++j) {
      for (int i = 0; i < cols; ++i) {
        const auto [a, b] = link_ends(grid, dir, i, j);
        const int na = static_cast<int>(grid.index(a));
        const int nb = static_cast<int>(grid.index(b));
        triplets.emplace_back(na, nb, t(i, j));
        triplets.emplace_back(nb, na, t(i, j));
      }
    }
  };
  add(LinkDir::x, hopping.t_x);
  add(LinkDir::y, hopping.t_y);
  if (hopping.has_diagonals()) {
    add(LinkDir::diag_up, *hopping.t_diag_up);
    add(LinkDir::diag_down, *hopping.t_diag_down);
  }

  const auto dim = static_cast<int>(grid.size());
  LatticeOperator::Sparse m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return LatticeOperator(std::move(m));
}

}  // namespace curvlat
