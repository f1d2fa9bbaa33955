#include "curvlat/wave_state.hpp"

#include <cmath>
#include <numbers>

#include "curvlat/errors.hpp"
#include "curvlat/kernels.hpp"

namespace curvlat {

double WaveState::squared_norm() const {
  return kernels::parallel::squared_norm(amplitude);
}

void WaveState::normalize() {
  const double n2 = squared_norm();
  if (!(n2 > 0.0)) throw PreconditionError("WaveState: cannot normalise a zero state");
  const double s = 1.0 / std::sqrt(n2);
  for (cplx& z : amplitude) z *= s;
}

WaveState lab_field_transform(const WaveState& state,
                              const DiagonalMetric& metric,
                              Representation target) {
  if (!(state.grid == metric.grid) || state.amplitude.size() != state.grid.size()) {
    throw PreconditionError("lab_field_transform: state and metric grids differ");
  }
  WaveState out = state;
  out.representation = target;
  if (target == state.representation) return out;
  const bool to_lab = target == Representation::lab;
  for (std::size_t n = 0; n < out.amplitude.size(); ++n) {
    const double q = std::pow(metric.det_g.values()[n], 0.25);
    const double f = to_lab ? q : 1.0 / q;
    out.amplitude[n] *= f;
    if (out.has_velocity()) out.velocity[n] *= f;
  }
  return out;
}

WaveState gaussian_packet(const Grid2D& grid, Point center, double width,
                          Point momentum) {
  const double h = grid.spacing();
  if (!(width >= 2.0 * h)) {
    throw PreconditionError("gaussian_packet: width " + std::to_string(width) +
                            " is below the resolvable 2 * spacing");
  }
  const double pmax = std::numbers::pi / h;
  if (std::abs(momentum.x) > pmax || std::abs(momentum.y) > pmax) {
    throw PreconditionError("gaussian_packet: momentum outside the Brillouin zone");
  }
  WaveState s{grid, Representation::lab, std::vector<cplx>(grid.size()), {}};
  const double inv4w2 = 1.0 / (4.0 * width * width);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double dx = grid.x(i) - center.x;
      const double dy = grid.y(j) - center.y;
      s.amplitude[grid.index(i, j)] =
          std::exp(-(dx * dx + dy * dy) * inv4w2) *
          std::polar(1.0, momentum.x * dx + momentum.y * dy);
    }
  }
  s.normalize();
  return s;
}

WaveState plane_wave(const Grid2D& grid, Point momentum) {
  WaveState s{grid, Representation::lab, std::vector<cplx>(grid.size()), {}};
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      s.amplitude[grid.index(i, j)] =
          std::polar(1.0, momentum.x * grid.x(i) + momentum.y * grid.y(j));
  s.normalize();
  return s;
}

Observables observables(const WaveState& state,
                        const LatticeOperator* hamiltonian) {
  const Grid2D& g = state.grid;
  double w = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    const double y = g.y(j);
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.x(i);
      const double p = std::norm(state.amplitude[g.index(i, j)]);
      w += p;
      sx += p * x;
      sy += p * y;
      sxx += p * x * x;
      syy += p * y * y;
      sxy += p * x * y;
    }
  }
  Observables o;
  o.norm = w;
  if (w > 0.0) {
    o.mean_x = sx / w;
    o.mean_y = sy / w;
    o.width_x = std::sqrt(std::max(0.0, sxx / w - o.mean_x * o.mean_x));
    o.width_y = std::sqrt(std::max(0.0, syy / w - o.mean_y * o.mean_y));
    o.quadrupole = sxy / w - o.mean_x * o.mean_y;
  }
  if (hamiltonian != nullptr) {
    std::vector<cplx> hpsi(state.amplitude.size());
    hamiltonian->apply(state.amplitude, hpsi);
    o.energy = kernels::parallel::dot(std::span<const cplx>(state.amplitude),
                                      std::span<const cplx>(hpsi))
                   .real() /
               w;
  }
  return o;
}

}  // namespace curvlat
