#include "curvlat/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <random>

#include "curvlat/errors.hpp"

namespace curvlat {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ColSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

struct SpectralOp {
  std::function<void(const Vec&, Vec&)> apply;
  bool inverted = false;
  double shift = 0.0;
};

struct Locked {
  Mat vectors;  // n x L
  std::vector<double> values;
  std::vector<double> residuals;

  Eigen::Index count() const { return vectors.cols(); }
};

void apply_h(const LatticeOperator& h, const Vec& x, Vec& y) {
  y.resize(x.size());
  h.apply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
          std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
}

double residual_norm(const LatticeOperator& h, const Vec& x, double lambda) {
  Vec hx;
  apply_h(h, x, hx);
  return (hx - lambda * x).norm();
}

void orthogonalize(Vec& w, const Mat& basis, Eigen::Index cols) {
  if (cols == 0) return;
  const auto b = basis.leftCols(cols);
  w.noalias() -= b * (b.transpose() * w);
}

struct RunOutcome {
  int converged = 0;
  double lowest_ritz = std::numeric_limits<double>::infinity();
  double best_unconverged_residual = std::numeric_limits<double>::infinity();
  bool exhausted = false;  // Krylov space became invariant
};

// One Lanczos run of at most m steps, deflated against `locked`. Locks the
// ascending prefix of converged Ritz pairs.
RunOutcome lanczos_run(const LatticeOperator& h, const SpectralOp& op,
                       Locked& locked, int m, double abs_tol,
                       std::mt19937_64& rng) {
  const Eigen::Index n = static_cast<Eigen::Index>(h.dimension());
  const Eigen::Index L = locked.count();
  m = static_cast<int>(std::min<Eigen::Index>(m, n - L));
  RunOutcome out;
  if (m <= 0) {
    out.exhausted = true;
    return out;
  }

  Mat v(n, m + 1);
  std::normal_distribution<double> gauss;
  Vec w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = gauss(rng);
  for (int pass = 0; pass < 2; ++pass) orthogonalize(w, locked.vectors, L);
  v.col(0) = w / w.norm();

  std::vector<double> alpha;
  std::vector<double> beta;
  int steps = 0;
  const double breakdown = 1e-13 * std::max(1.0, h.norm_bound());
  for (int j = 0; j < m; ++j) {
    op.apply(v.col(j), w);
    const double a = v.col(j).dot(w);
    alpha.push_back(a);
    w -= a * v.col(j);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * v.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      orthogonalize(w, v, j + 1);
      orthogonalize(w, locked.vectors, L);
    }
    steps = j + 1;
    const double b = w.norm();
    if (b < breakdown || j + 1 == m) {
      out.exhausted = b < breakdown;
      break;
    }
    beta.push_back(b);
    v.col(j + 1) = w / b;
  }

  Vec diag = Eigen::Map<Vec>(alpha.data(), steps);
  Vec sub = Eigen::Map<Vec>(beta.data(), std::max(0, steps - 1));
  Eigen::SelfAdjointEigenSolver<Mat> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  // Map Ritz values back to the spectrum of H and order ascending.
  std::vector<std::pair<double, int>> ritz;
  for (int i = 0; i < steps; ++i) {
    const double theta = tri.eigenvalues()[i];
    double lambda = theta;
    if (op.inverted) {
      if (std::abs(theta) < 1e-300) continue;
      lambda = op.shift + 1.0 / theta;
    }
    ritz.emplace_back(lambda, i);
  }
  std::sort(ritz.begin(), ritz.end());
  if (!ritz.empty()) out.lowest_ritz = ritz.front().first;

  const auto basis = v.leftCols(steps);
  for (const auto& [lambda, idx] : ritz) {
    Vec x = basis * tri.eigenvectors().col(idx);
    x.normalize();
    const double res = residual_norm(h, x, lambda);
    if (res > abs_tol) {
      out.best_unconverged_residual = res;
      break;
    }
    locked.vectors.conservativeResize(n, locked.count() + 1);
    locked.vectors.col(locked.count() - 1) = x;
    locked.values.push_back(lambda);
    locked.residuals.push_back(res);
    ++out.converged;
  }
  return out;
}

double kth_smallest(std::vector<double> values, int k) {
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[static_cast<std::size_t>(k - 1)];
}

Locked deflated_lanczos(const LatticeOperator& h, const SpectralOp& op, int k,
                        const EigenOptions& opt) {
  const double abs_tol = opt.tolerance * std::max(h.norm_bound(), 1e-300);
  const Eigen::Index n = static_cast<Eigen::Index>(h.dimension());
  std::mt19937_64 rng(opt.seed);
  Locked locked{Mat(n, 0), {}, {}};
  int m = std::max(opt.initial_basis, 2 * k + 20);
  double best = std::numeric_limits<double>::infinity();
  for (int run = 0; run < opt.max_runs; ++run) {
    const RunOutcome r = lanczos_run(h, op, locked, m, abs_tol, rng);
    best = std::min(best, r.best_unconverged_residual);
    if (locked.count() >= k) {
      const double kth = kth_smallest(locked.values, k);
      // A fresh deflated run that finds nothing below the current k-th
      // value confirms no multiplicity was missed.
      const bool confirmed = r.lowest_ritz >= kth - abs_tol ||
                             (r.converged == 0 && r.exhausted);
      if (confirmed && r.converged == 0) break;
      if (r.converged > 0) {
        bool any_below = false;
        for (std::size_t i = locked.values.size() - static_cast<std::size_t>(r.converged);
             i < locked.values.size(); ++i) {
          any_below |= locked.values[i] < kth - abs_tol;
        }
        if (!any_below && r.lowest_ritz >= kth - abs_tol) break;
      }
    }
    if (locked.count() >= n) break;
    if (r.converged == 0) {
      if (m >= opt.max_basis) {
        throw NumericalError("lowest_eigenpairs (Lanczos)", best,
                             run + 1);
      }
      m = std::min(2 * m, opt.max_basis);
    }
    if (run + 1 == opt.max_runs && locked.count() < k) {
      throw NumericalError("lowest_eigenpairs (Lanczos)", best, run + 1);
    }
  }
  if (locked.count() < k) {
    throw NumericalError("lowest_eigenpairs (Lanczos)", best, opt.max_runs);
  }
  return locked;
}

SpectralOp shift_invert_op(const LatticeOperator& h, double shift,
                           std::shared_ptr<Eigen::SimplicialLDLT<ColSparse>>& keep) {
  ColSparse a = h.matrix();
  ColSparse id(a.rows(), a.cols());
  id.setIdentity();
  a = a - shift * id;
  keep = std::make_shared<Eigen::SimplicialLDLT<ColSparse>>();
  keep->compute(a);
  if (keep->info() != Eigen::Success) {
    throw NumericalError("lowest_eigenpairs (shift-invert factorisation)",
                         std::numeric_limits<double>::infinity(), 0);
  }
  auto solver = keep;
  return SpectralOp{[solver](const Vec& x, Vec& y) { y = solver->solve(x); },
                    true, shift};
}

EigenResult finish(const Locked& locked, int k, EigenMethod method) {
  std::vector<int> order(locked.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return locked.values[static_cast<std::size_t>(a)] <
           locked.values[static_cast<std::size_t>(b)];
  });
  EigenResult r;
  r.method = method;
  r.values.resize(k);
  r.vectors.resize(locked.vectors.rows(), k);
  for (int i = 0; i < k; ++i) {
    const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(i)]);
    r.values[i] = locked.values[src];
    r.vectors.col(i) = locked.vectors.col(static_cast<Eigen::Index>(src));
    r.residuals.push_back(locked.residuals[src]);
  }
  return r;
}

}  // namespace

EigenResult lowest_eigenpairs(const LatticeOperator& h, int k,
                              const EigenOptions& options) {
  const std::size_t n = h.dimension();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw PreconditionError("lowest_eigenpairs: k must be in [1, dimension]");
  }
  EigenMethod method = options.method;
  if (method == EigenMethod::automatic) {
    method = n < options.dense_limit ? EigenMethod::dense
                                     : EigenMethod::shift_invert;
  }

  if (method == EigenMethod::dense) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h.dense());
    EigenResult r;
    r.method = EigenMethod::dense;
    r.values = es.eigenvalues().head(k);
    r.vectors = es.eigenvectors().leftCols(k);
    for (int i = 0; i < k; ++i) {
      r.residuals.push_back(residual_norm(h, r.vectors.col(i), r.values[i]));
    }
    return r;
  }

  if (method == EigenMethod::lanczos) {
    const SpectralOp op{[&h](const Vec& x, Vec& y) { apply_h(h, x, y); }, false,
                        0.0};
    return finish(deflated_lanczos(h, op, k, options), k, method);
  }

  std::shared_ptr<Eigen::SimplicialLDLT<ColSparse>> factor;
  double shift;
  if (options.shift) {
    shift = *options.shift;
  } else {
    // Locate the bottom of the spectrum from a shift strictly below it,
    // then re-factor just under the lowest eigenvalue.
    const double below = h.spectrum_lower_bound() -
                         1e-6 * std::max(1.0, h.norm_bound());
    const Locked first =
        deflated_lanczos(h, shift_invert_op(h, below, factor), 1, options);
    const double lowest = *std::min_element(first.values.begin(), first.values.end());
    const double res = *std::max_element(first.residuals.begin(), first.residuals.end());
    shift = lowest - 2.0 * res - 1e-9 * std::max(1.0, h.norm_bound());
  }
  const SpectralOp op = shift_invert_op(h, shift, factor);
  return finish(deflated_lanczos(h, op, k, options), k, method);
}

}  // namespace curvlat
