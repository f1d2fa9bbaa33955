#pragma once

#include <memory>
#include <vector>

#include "curvlat/generators.hpp"
#include "curvlat/lattice_operator.hpp"
#include "curvlat/wave_state.hpp"

namespace curvlat {

/// Linear solver for the Crank-Nicolson system. `direct` uses a sparse LU
/// factorisation, recomputed only when H(t) changes; `iterative` uses
/// BiCGSTAB with a Jacobi preconditioner down to `tolerance`.
enum class LinearSolver { direct, iterative };

struct EvolutionOptions {
  double dt = 0.01;
  int steps = 100;
  double t0 = 0.0;
  /// Record observables every this many steps (and at t0 and the end).
  int record_every = 1;
  /// Store full amplitudes every this many steps; 0 disables snapshots.
  int snapshot_every = 0;
  /// Relative residual bound for the Crank-Nicolson linear solves.
  double tolerance = 1e-10;
  int max_iterations = 1000;
  LinearSolver solver = LinearSolver::direct;
};

struct TrajectoryRecord {
  double t = 0.0;
  Observables obs;
  /// Schrodinger: <psi|H(t)|psi>. Wave: the leapfrog discrete energy
  /// |psi'|^2 + <psi|H psi> - dt^2/4 |H psi|^2, conserved to round-off.
  double energy = 0.0;
  /// Wave only: the instantaneous |psi'|^2 + <psi|H psi>, which oscillates
  /// within O(dt^2) of `energy`.
  double instantaneous_energy = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<cplx> amplitude;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  std::vector<Snapshot> snapshots;
  WaveState final_state;
  int max_solver_iterations = 0;
  double max_solver_residual = 0.0;
};

/// One Crank-Nicolson (Cayley) step per call:
///   (1 + i H dt/2) psi' = (1 - i H dt/2) psi,  H = H(t + dt/2).
/// Static models are assembled and factorised once.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(TimeDependentHopping model, double dt,
                       double tolerance = 1e-10, int max_iterations = 1000,
                       LinearSolver solver = LinearSolver::direct);
  ~CrankNicolsonStepper();
  CrankNicolsonStepper(CrankNicolsonStepper&&) noexcept;
  CrankNicolsonStepper& operator=(CrankNicolsonStepper&&) noexcept;

  /// Advances psi from t to t + dt in place.
  void step(std::vector<cplx>& psi, double t);

  int last_iterations() const { return last_iterations_; }
  double last_residual() const { return last_residual_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int last_iterations_ = 0;
  double last_residual_ = 0.0;
};

/// i d/dt psi = H(t) psi on the lab field.
Trajectory evolve_schrodinger(WaveState state, const TimeDependentHopping& model,
                              const EvolutionOptions& options);

/// d^2/dt^2 psi = -H psi by velocity Verlet. H must be positive
/// semidefinite (exact-mode dictionary or a graph-Laplacian model); dt must
/// satisfy dt < 2 / sqrt(lambda_max) with lambda_max bounded by Gershgorin.
/// The state's velocity defaults to zero when absent.
Trajectory evolve_wave(WaveState state, const LatticeOperator& hamiltonian,
                       const EvolutionOptions& options);

/// Largest stable leapfrog step for this operator (Gershgorin bound).
double leapfrog_stability_limit(const LatticeOperator& hamiltonian);

/// Leapfrog discrete energy of (psi, psi') for step dt.
double leapfrog_energy(const LatticeOperator& hamiltonian,
                       const std::vector<cplx>& psi,
                       const std::vector<cplx>& velocity, double dt);

}  // namespace curvlat
