#include "curvlat/evolution.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <memory>

#include "curvlat/errors.hpp"
#include "curvlat/kernels.hpp"

namespace curvlat {

namespace {

using ComplexSparse = Eigen::SparseMatrix<cplx, Eigen::RowMajor, int>;
using ColComplexSparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using Solver =
    Eigen::BiCGSTAB<ComplexSparse, Eigen::DiagonalPreconditioner<cplx>>;
using DirectSolver =
    Eigen::SparseLU<ColComplexSparse, Eigen::COLAMDOrdering<int>>;

bool same_values(const LatticeOperator::Sparse& a, const LatticeOperator::Sparse& b) {
  if (a.nonZeros() != b.nonZeros() || a.rows() != b.rows()) return false;
  for (Eigen::Index k = 0; k < a.nonZeros(); ++k) {
    if (a.valuePtr()[k] != b.valuePtr()[k] ||
        a.innerIndexPtr()[k] != b.innerIndexPtr()[k]) {
      return false;
    }
  }
  for (Eigen::Index r = 0; r <= a.rows(); ++r) {
    if (a.outerIndexPtr()[r] != b.outerIndexPtr()[r]) return false;
  }
  return true;
}

// 1 + i s H as a complex sparse matrix with the pattern of H plus diagonal.
ComplexSparse cayley_matrix(const LatticeOperator& h, double s) {
  const auto& m = h.matrix();
  ComplexSparse a = m.cast<cplx>() * cplx(0.0, s);
  ComplexSparse id(a.rows(), a.cols());
  id.setIdentity();
  ComplexSparse out = a + id.cast<cplx>();
  out.makeCompressed();
  return out;
}

bool should_record(int step, int steps, int every) {
  return step == steps || (every > 0 && step % every == 0);
}

}  // namespace

struct CrankNicolsonStepper::Impl {
  TimeDependentHopping model;
  double dt;
  double tolerance;
  int max_iterations;
  LinearSolver kind;
  std::unique_ptr<LatticeOperator> h;
  ComplexSparse a;
  Solver solver;
  DirectSolver lu;
  bool analysed = false;
  bool prepared = false;
  std::vector<cplx> hpsi;
  Eigen::VectorXcd rhs;
  Eigen::VectorXcd guess;

  Impl(TimeDependentHopping m, double step, double tol, int max_it, LinearSolver k)
      : model(std::move(m)), dt(step), tolerance(tol), max_iterations(max_it), kind(k) {}

  void prepare(double t_mid) {
    if (prepared && model.is_static()) return;
    auto next = std::make_unique<LatticeOperator>(assemble_hamiltonian(model.at(t_mid)));
    // Unchanged operator: keep the existing factorisation.
    if (prepared && same_values(next->matrix(), h->matrix())) return;
    h = std::move(next);
    a = cayley_matrix(*h, 0.5 * dt);
    if (kind == LinearSolver::direct) {
      const ColComplexSparse ca(a);
      if (!analysed) {
        lu.analyzePattern(ca);
        analysed = true;
      }
      lu.factorize(ca);
      if (lu.info() != Eigen::Success) {
        throw NumericalError("evolve_schrodinger (sparse LU)",
                             std::numeric_limits<double>::infinity(), 0);
      }
    } else {
      solver.setTolerance(tolerance);
      solver.setMaxIterations(max_iterations);
      solver.compute(a);
    }
    prepared = true;
  }
};

CrankNicolsonStepper::CrankNicolsonStepper(TimeDependentHopping model, double dt,
                                           double tolerance, int max_iterations,
                                           LinearSolver solver)
    : impl_(std::make_unique<Impl>(std::move(model), dt, tolerance,
                                   max_iterations, solver)) {
  if (!(dt > 0.0)) throw PreconditionError("Crank-Nicolson: dt must be positive");
  if (!(tolerance > 0.0)) {
    throw PreconditionError("Crank-Nicolson: tolerance must be positive");
  }
}

CrankNicolsonStepper::~CrankNicolsonStepper() = default;
CrankNicolsonStepper::CrankNicolsonStepper(CrankNicolsonStepper&&) noexcept =
    default;
CrankNicolsonStepper& CrankNicolsonStepper::operator=(
    CrankNicolsonStepper&&) noexcept = default;

void CrankNicolsonStepper::step(std::vector<cplx>& psi, double t) {
  Impl& s = *impl_;
  s.prepare(t + 0.5 * s.dt);
  const std::size_t n = psi.size();
  if (n != s.h->dimension()) {
    throw PreconditionError("Crank-Nicolson: state size does not match model");
  }
  s.hpsi.resize(n);
  s.h->apply(psi, s.hpsi);
  s.rhs.resize(static_cast<Eigen::Index>(n));
  const cplx half_step(0.0, 0.5 * s.dt);
  for (std::size_t k = 0; k < n; ++k) {
    s.rhs[static_cast<Eigen::Index>(k)] = psi[k] - half_step * s.hpsi[k];
  }
  // Explicit-Euler-like predictor (1 - iH dt) psi as the starting guess.
  s.guess = s.rhs;
  for (std::size_t k = 0; k < n; ++k) {
    s.guess[static_cast<Eigen::Index>(k)] -= half_step * s.hpsi[k];
  }
  Eigen::VectorXcd x;
  if (s.kind == LinearSolver::direct) {
    x = s.lu.solve(s.rhs);
    last_iterations_ = 1;
    last_residual_ = (s.a * x - s.rhs).norm() / s.rhs.norm();
    if (s.lu.info() != Eigen::Success || !(last_residual_ <= s.tolerance)) {
      throw NumericalError("evolve_schrodinger (sparse LU)", last_residual_, 1);
    }
  } else {
    x = s.solver.solveWithGuess(s.rhs, s.guess);
    last_iterations_ = static_cast<int>(s.solver.iterations());
    last_residual_ = s.solver.error();
    if (s.solver.info() != Eigen::Success || !(last_residual_ <= s.tolerance)) {
      throw NumericalError("evolve_schrodinger (BiCGSTAB)", last_residual_,
                           last_iterations_);
    }
  }
  for (std::size_t k = 0; k < n; ++k) psi[k] = x[static_cast<Eigen::Index>(k)];
}

Trajectory evolve_schrodinger(WaveState state, const TimeDependentHopping& model,
                              const EvolutionOptions& options) {
  if (!(state.grid == model.grid()) || state.amplitude.size() != state.grid.size()) {
    throw PreconditionError("evolve_schrodinger: state and model grids differ");
  }
  if (options.steps < 0) {
    throw PreconditionError("evolve_schrodinger: steps must be non-negative");
  }
  CrankNicolsonStepper stepper(model, options.dt, options.tolerance,
                               options.max_iterations, options.solver);
  Trajectory traj{{}, {}, state, 0, 0.0};
  std::vector<cplx>& psi = traj.final_state.amplitude;
  std::unique_ptr<LatticeOperator> static_h;
  if (model.is_static()) {
    static_h = std::make_unique<LatticeOperator>(assemble_hamiltonian(model.at(0.0)));
  }
  auto record = [&](double t) {
    TrajectoryRecord r;
    r.t = t;
    if (static_h) {
      r.obs = observables(traj.final_state, static_h.get());
    } else {
      const LatticeOperator h = assemble_hamiltonian(model.at(t));
      r.obs = observables(traj.final_state, &h);
    }
    r.energy = *r.obs.energy;
    r.instantaneous_energy = r.energy;
    traj.records.push_back(r);
  };
  auto snapshot = [&](double t) {
    traj.snapshots.push_back({t, psi});
  };

  record(options.t0);
  if (options.snapshot_every > 0) snapshot(options.t0);
  for (int k = 1; k <= options.steps; ++k) {
    const double t_prev = options.t0 + (k - 1) * options.dt;
    stepper.step(psi, t_prev);
    traj.max_solver_iterations =
        std::max(traj.max_solver_iterations, stepper.last_iterations());
    traj.max_solver_residual =
        std::max(traj.max_solver_residual, stepper.last_residual());
    const double t = options.t0 + k * options.dt;
    if (should_record(k, options.steps, options.record_every)) record(t);
    if (options.snapshot_every > 0 && k % options.snapshot_every == 0) snapshot(t);
  }
  return traj;
}

double leapfrog_stability_limit(const LatticeOperator& hamiltonian) {
  const double lmax = hamiltonian.spectrum_upper_bound();
  if (!(lmax > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 / std::sqrt(lmax);
}

double leapfrog_energy(const LatticeOperator& hamiltonian,
                       const std::vector<cplx>& psi,
                       const std::vector<cplx>& velocity, double dt) {
  std::vector<cplx> hpsi(psi.size());
  hamiltonian.apply(psi, hpsi);
  const double potential = kernels::parallel::dot(std::span<const cplx>(psi),
                                                  std::span<const cplx>(hpsi))
                               .real();
  return kernels::parallel::squared_norm(velocity) + potential -
         0.25 * dt * dt * kernels::parallel::squared_norm(hpsi);
}

Trajectory evolve_wave(WaveState state, const LatticeOperator& hamiltonian,
                       const EvolutionOptions& options) {
  const std::size_t n = state.amplitude.size();
  if (n != hamiltonian.dimension() || n != state.grid.size()) {
    throw PreconditionError("evolve_wave: state size does not match operator");
  }
  const double limit = leapfrog_stability_limit(hamiltonian);
  if (!(options.dt > 0.0) || !(options.dt < limit)) {
    throw PreconditionError("evolve_wave: dt = " + std::to_string(options.dt) +
                            " violates the stability bound dt < " +
                            std::to_string(limit));
  }
  if (!state.has_velocity()) state.velocity.assign(n, cplx{});
  if (state.velocity.size() != n) {
    throw PreconditionError("evolve_wave: velocity size does not match state");
  }

  const double dt = options.dt;
  Trajectory traj{{}, {}, std::move(state), 0, 0.0};
  std::vector<cplx>& psi = traj.final_state.amplitude;
  std::vector<cplx>& vel = traj.final_state.velocity;
  std::vector<cplx> force(n);
  hamiltonian.apply(psi, force);

  auto record = [&](double t) {
    TrajectoryRecord r;
    r.t = t;
    r.obs = observables(traj.final_state);
    // force holds H psi for the current psi.
    const double potential =
        kernels::parallel::dot(std::span<const cplx>(psi),
                               std::span<const cplx>(force))
            .real();
    const double kinetic = kernels::parallel::squared_norm(vel);
    r.obs.energy = potential / r.obs.norm;
    r.instantaneous_energy = kinetic + potential;
    r.energy = r.instantaneous_energy -
               0.25 * dt * dt * kernels::parallel::squared_norm(force);
    traj.records.push_back(r);
  };

  record(options.t0);
  if (options.snapshot_every > 0) traj.snapshots.push_back({options.t0, psi});
  const cplx half(-0.5 * dt, 0.0);
  const cplx full(dt, 0.0);
  for (int k = 1; k <= options.steps; ++k) {
    kernels::parallel::axpy(half, force, vel);   // v += -dt/2 H psi
    kernels::parallel::axpy(full, vel, psi);     // psi += dt v
    hamiltonian.apply(psi, force);
    kernels::parallel::axpy(half, force, vel);
    const double t = options.t0 + k * dt;
    if (should_record(k, options.steps, options.record_every)) record(t);
    if (options.snapshot_every > 0 && k % options.snapshot_every == 0) {
      traj.snapshots.push_back({t, psi});
    }
  }
  return traj;
}

}  // namespace curvlat
