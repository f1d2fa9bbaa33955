#include "curvlat/bloch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>

#include "curvlat/errors.hpp"

namespace curvlat {

void SupercellModel::validate() const {
  if (dimension != 1 && dimension != 2) {
    throw PreconditionError("SupercellModel: dimension must be 1 or 2");
  }
  if (basis < 1) throw PreconditionError("SupercellModel: basis must be >= 1");
  if (static_cast<int>(onsite.size()) != basis) {
    throw PreconditionError("SupercellModel: need one on-site energy per basis site");
  }
  if (!positions.empty() && static_cast<int>(positions.size()) != basis) {
    throw PreconditionError("SupercellModel: positions must be empty or one per basis site");
  }
  using Key = std::tuple<int, int, int, int, double>;
  std::map<Key, int> count;
  for (const auto& h : hoppings) {
    if (h.from < 0 || h.from >= basis || h.to < 0 || h.to >= basis) {
      throw PreconditionError("SupercellModel: hopping references a missing basis site");
    }
    if (dimension == 1 && h.cell_offset[1] != 0) {
      throw PreconditionError("SupercellModel: 1D model with a y cell offset");
    }
    if (h.cell_offset == std::array<int, 2>{0, 0} && h.from == h.to) {
      throw PreconditionError("SupercellModel: on-site term in hopping list");
    }
    if (!std::isfinite(h.amplitude)) {
      throw PreconditionError("SupercellModel: non-finite hopping amplitude");
    }
    ++count[{h.cell_offset[0], h.cell_offset[1], h.from, h.to, h.amplitude}];
  }
  for (const auto& [key, c] : count) {
    const auto [dx, dy, from, to, amp] = key;
    const auto it = count.find({-dx, -dy, to, from, amp});
    if (it == count.end() || it->second != c) {
      throw PreconditionError(
          "SupercellModel: hopping list is not closed under Hermitian conjugation");
    }
  }
}

std::vector<double> zone_axis(int count, double d) {
  if (count < 2) throw PreconditionError("zone_axis: need at least 2 momenta");
  if (!(d > 0.0)) throw PreconditionError("zone_axis: spacing must be positive");
  std::vector<double> p(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    // Written so that p[k] == -p[count - 1 - k] exactly.
    const double s = static_cast<double>(2 * k - (count - 1)) /
                     static_cast<double>(count - 1);
    p[static_cast<std::size_t>(k)] = std::numbers::pi / d * s;
  }
  return p;
}

std::vector<Point> zone_line(int count, double d) {
  std::vector<Point> out;
  for (double p : zone_axis(count, d)) out.push_back({p, 0.0});
  return out;
}

std::vector<Point> zone_grid(int count_x, int count_y, double dx, double dy) {
  const auto px = zone_axis(count_x, dx);
  const auto py = zone_axis(count_y, dy);
  std::vector<Point> out;
  out.reserve(px.size() * py.size());
  for (double y : py) {
    for (double x : px) out.push_back({x, y});
  }
  return out;
}

Eigen::MatrixXcd bloch_matrix(const SupercellModel& model, Point p) {
  const int s = model.basis;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(s, s);
  for (int b = 0; b < s; ++b) h(b, b) = model.onsite[static_cast<std::size_t>(b)];
  for (const auto& hop : model.hoppings) {
    double rx = hop.cell_offset[0] * model.a1.x + hop.cell_offset[1] * model.a2.x;
    double ry = hop.cell_offset[0] * model.a1.y + hop.cell_offset[1] * model.a2.y;
    if (!model.positions.empty()) {
      rx += model.positions[static_cast<std::size_t>(hop.to)].x -
            model.positions[static_cast<std::size_t>(hop.from)].x;
      ry += model.positions[static_cast<std::size_t>(hop.to)].y -
            model.positions[static_cast<std::size_t>(hop.from)].y;
    }
    const double phase = p.x * rx + p.y * ry;
    h(hop.to, hop.from) += hop.amplitude * std::polar(1.0, phase);
  }
  return h;
}

BandResult bloch_bands(const SupercellModel& model,
                       const std::vector<Point>& momenta, Execution exec) {
  model.validate();
  BandResult r;
  r.dimension = model.dimension;
  r.momenta = momenta;
  r.energies.resize(static_cast<Eigen::Index>(momenta.size()), model.basis);
  const auto count = static_cast<std::ptrdiff_t>(momenta.size());
  auto solve = [&](std::ptrdiff_t k) {
    const Eigen::MatrixXcd h = bloch_matrix(model, momenta[static_cast<std::size_t>(k)]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    r.energies.row(k) = es.eigenvalues().transpose();
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) solve(k);
  } else {
    for (std::ptrdiff_t k = 0; k < count; ++k) solve(k);
  }
  return r;
}

SupercellModel simple_chain(double J, double d, double onsite) {
  SupercellModel m;
  m.dimension = 1;
  m.a1 = {d, 0.0};
  m.basis = 1;
  m.onsite = {onsite};
  m.hoppings = {{{1, 0}, 0, 0, -J}, {{-1, 0}, 0, 0, -J}};
  return m;
}

SupercellModel dimerized_chain(double J1, double J2, double d, double onsite) {
  SupercellModel m;
  m.dimension = 1;
  m.a1 = {d, 0.0};
  m.basis = 2;
  m.onsite = {onsite, onsite};
  m.hoppings = {{{0, 0}, 0, 1, -J1},
                {{0, 0}, 1, 0, -J1},
                {{1, 0}, 1, 0, -J2},
                {{-1, 0}, 0, 1, -J2}};
  return m;
}

}  // namespace curvlat
