#include "curvlat/geodesic.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "curvlat/errors.hpp"

namespace curvlat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Neighbour {
  Site site;
  double ginv;  // inverse-metric component on the connecting link
};

// Neighbours along one axis: index 0 is the "minus" side, 1 the "plus" side.
int axis_neighbours(const DiagonalMetric& m, Site s, LinkDir dir,
                    Neighbour out[2]) {
  const Grid2D& g = m.grid;
  int count = 0;
  if (dir == LinkDir::x) {
    const int n = g.nx();
    if (g.periodic() || s.i > 0) {
      const int im = (s.i + n - 1) % n;
      out[count++] = {{im, s.j}, m.gxx_inv(im, s.j)};
    }
    if (g.periodic() || s.i < n - 1) {
      out[count++] = {{(s.i + 1) % n, s.j}, m.gxx_inv(s.i, s.j)};
    }
  } else {
    const int n = g.ny();
    if (g.periodic() || s.j > 0) {
      const int jm = (s.j + n - 1) % n;
      out[count++] = {{s.i, jm}, m.gyy_inv(s.i, jm)};
    }
    if (g.periodic() || s.j < n - 1) {
      out[count++] = {{s.i, (s.j + 1) % n}, m.gyy_inv(s.i, s.j)};
    }
  }
  return count;
}

void check_source(const DiagonalMetric& metric, Site source) {
  metric.validate();
  if (!metric.grid.contains(source)) {
    throw PreconditionError("geodesic: source site outside the grid");
  }
}

using QueueEntry = std::pair<double, std::size_t>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>,
                                     std::greater<QueueEntry>>;

}  // namespace

SiteField geodesic_distance_map(const DiagonalMetric& metric, Site source) {
  check_source(metric, source);
  const Grid2D& grid = metric.grid;
  const double h = grid.spacing();

  SiteField dist = make_site_field(grid, kInf);
  std::vector<char> accepted(grid.size(), 0);
  MinQueue trial;

  dist(source.i, source.j) = 0.0;
  trial.emplace(0.0, grid.index(source));

  // Smallest accepted value along an axis and the link metric toward it.
  auto upwind = [&](Site s, LinkDir dir, double& value, double& ginv) {
    Neighbour nb[2];
    const int cnt = axis_neighbours(metric, s, dir, nb);
    value = kInf;
    ginv = 0.0;
    for (int k = 0; k < cnt; ++k) {
      if (!accepted[grid.index(nb[k].site)]) continue;
      const double d = dist(nb[k].site.i, nb[k].site.j);
      if (d < value) {
        value = d;
        ginv = nb[k].ginv;
      }
    }
  };

  auto solve = [&](Site s) {
    double ux, gx, uy, gy;
    upwind(s, LinkDir::x, ux, gx);
    upwind(s, LinkDir::y, uy, gy);
    // Slowness^2 per axis: a (u - ux)^2 + b (u - uy)^2 = 1.
    const double a = gx / (h * h);
    const double b = gy / (h * h);
    double best = kInf;
    if (ux < kInf) best = std::min(best, ux + 1.0 / std::sqrt(a));
    if (uy < kInf) best = std::min(best, uy + 1.0 / std::sqrt(b));
    if (ux < kInf && uy < kInf) {
      const double diff = ux - uy;
      const double disc = (a + b) - a * b * diff * diff;
      if (disc >= 0.0) {
        const double u = (a * ux + b * uy + std::sqrt(disc)) / (a + b);
        if (u >= std::max(ux, uy)) best = std::min(best, u);
      }
    }
    return best;
  };

  while (!trial.empty()) {
    const auto [d, n] = trial.top();
    trial.pop();
    if (accepted[n] || d > dist.values()[n]) continue;
    accepted[n] = 1;
    const Site s = grid.site(n);
    for (LinkDir dir : {LinkDir::x, LinkDir::y}) {
      Neighbour nb[2];
      const int cnt = axis_neighbours(metric, s, dir, nb);
      for (int k = 0; k < cnt; ++k) {
        const std::size_t m = grid.index(nb[k].site);
        if (accepted[m]) continue;
        const double cand = solve(nb[k].site);
        if (cand < dist.values()[m]) {
          dist.values()[m] = cand;
          trial.emplace(cand, m);
        }
      }
    }
  }
  return dist;
}

SiteField graph_distance_map(const DiagonalMetric& metric, Site source) {
  check_source(metric, source);
  const Grid2D& grid = metric.grid;
  SiteField dist = make_site_field(grid, kInf);
  std::vector<char> done(grid.size(), 0);
  MinQueue queue;
  dist(source.i, source.j) = 0.0;
  queue.emplace(0.0, grid.index(source));
  while (!queue.empty()) {
    const auto [d, n] = queue.top();
    queue.pop();
    if (done[n]) continue;
    done[n] = 1;
    const Site s = grid.site(n);
    for (LinkDir dir : {LinkDir::x, LinkDir::y}) {
      Neighbour nb[2];
      const int cnt = axis_neighbours(metric, s, dir, nb);
      for (int k = 0; k < cnt; ++k) {
        const std::size_t m = grid.index(nb[k].site);
        const double cand = d + grid.spacing() / std::sqrt(nb[k].ginv);
        if (cand < dist.values()[m]) {
          dist.values()[m] = cand;
          queue.emplace(cand, m);
        }
      }
    }
  }
  return dist;
}

}  // namespace curvlat
