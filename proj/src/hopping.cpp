#include "curvlat/hopping.hpp"

#include <cmath>
#include <string>

#include "curvlat/errors.hpp"

namespace curvlat {

namespace {

template <typename Fn>
void for_each_link(const Grid2D& grid, LinkDir dir, Fn&& fn) {
  const auto [cols, rows] = link_extent(grid, dir);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < cols; ++i) fn(i, j);
}

bool all_finite(const Array2D<double>& f) {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_negative(const Array2D<double>& f) {
  for (double v : f.values())
    if (!(v < 0.0)) return false;
  return true;
}

}  // namespace

void HoppingModel::validate() const {
  if (!matches_link_shape(grid, LinkDir::x, t_x) ||
      !matches_link_shape(grid, LinkDir::y, t_y) ||
      !matches_site_shape(grid, onsite)) {
    throw PreconditionError("HoppingModel: field shape does not match grid");
  }
  if (t_diag_up.has_value() != t_diag_down.has_value()) {
    throw PreconditionError(
        "HoppingModel: diagonal link families must be given together");
  }
  if (t_diag_up && (!matches_link_shape(grid, LinkDir::diag_up, *t_diag_up) ||
                    !matches_link_shape(grid, LinkDir::diag_down, *t_diag_down))) {
    throw PreconditionError("HoppingModel: diagonal field shape does not match grid");
  }
  if (!all_finite(t_x) || !all_finite(t_y) || !all_finite(onsite) ||
      (t_diag_up && (!all_finite(*t_diag_up) || !all_finite(*t_diag_down)))) {
    throw PreconditionError("HoppingModel: non-finite entry");
  }
}

bool HoppingModel::standard_sign() const {
  return all_negative(t_x) && all_negative(t_y) &&
         (!t_diag_up || (all_negative(*t_diag_up) && all_negative(*t_diag_down)));
}

HoppingModel metric_to_hopping(const DiagonalMetric& metric, OnsiteMode mode) {
  metric.validate();
  const Grid2D& grid = metric.grid;
  const double h2 = grid.spacing() * grid.spacing();

  HoppingModel model{grid,
                     make_link_field(grid, LinkDir::x),
                     make_link_field(grid, LinkDir::y),
                     make_site_field(grid),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt};

  auto add_link = [&](LinkDir dir, const LinkField& ginv, LinkField& t) {
    for_each_link(grid, dir, [&](int i, int j) {
      const double w = ginv(i, j) / h2;
      t(i, j) = -w;
      const auto [a, b] = link_ends(grid, dir, i, j);
      if (mode == OnsiteMode::laplacian) {
        model.onsite(a.i, a.j) += w;
        model.onsite(b.i, b.j) += w;
      } else {
        const double ga = metric.det_g(a.i, a.j);
        const double gb = metric.det_g(b.i, b.j);
        model.onsite(a.i, a.j) += w * std::pow(gb / ga, 0.25);
        model.onsite(b.i, b.j) += w * std::pow(ga / gb, 0.25);
      }
    });
  };
  add_link(LinkDir::x, metric.gxx_inv, model.t_x);
  add_link(LinkDir::y, metric.gyy_inv, model.t_y);
  return model;
}

DiagonalMetric hopping_to_metric(const HoppingModel& hopping) {
  hopping.validate();
  if (hopping.has_diagonals()) {
    throw PreconditionError(
        "hopping_to_metric: diagonal links have no diagonal-metric image");
  }
  const Grid2D& grid = hopping.grid;
  const double h2 = grid.spacing() * grid.spacing();
  auto invert = [&](const LinkField& t, const char* name) {
    LinkField g(t.cols(), t.rows());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const double v = t.values()[k];
      if (!(v < 0.0)) {
        throw PreconditionError(std::string("hopping_to_metric: ") + name +
                                " has a non-negative amplitude (" +
                                std::to_string(v) + ")");
      }
      g.values()[k] = -v * h2;
    }
    return g;
  };
  return DiagonalMetric::from_links(grid, invert(hopping.t_x, "T_x"),
                                    invert(hopping.t_y, "T_y"));
}

SiteField incident_hopping_sum(const HoppingModel& hopping) {
  const Grid2D& grid = hopping.grid;
  SiteField sum = make_site_field(grid);
  auto add = [&](LinkDir dir, const LinkField& t) {
    for_each_link(grid, dir, [&](int i, int j) {
      const auto [a, b] = link_ends(grid, dir, i, j);
      sum(a.i, a.j) += std::abs(t(i, j));
      sum(b.i, b.j) += std::abs(t(i, j));
    });
  };
  add(LinkDir::x, hopping.t_x);
  add(LinkDir::y, hopping.t_y);
  if (hopping.has_diagonals()) {
    add(LinkDir::diag_up, *hopping.t_diag_up);
    add(LinkDir::diag_down, *hopping.t_diag_down);
  }
  return sum;
}

}  // namespace curvlat
