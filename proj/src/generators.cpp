#include "curvlat/generators.hpp"

#include <cmath>
#include <string>

#include "curvlat/errors.hpp"

namespace curvlat {

TimeDependentHopping::TimeDependentHopping(HoppingModel model)
    : grid_(model.grid), static_model_(std::move(model)) {
  static_model_->validate();
  descriptor_ = static_model_->schedule;
}

TimeDependentHopping::TimeDependentHopping(
    Grid2D grid, std::function<HoppingModel(double)> eval, Schedule descriptor)
    : grid_(grid), eval_(std::move(eval)), descriptor_(std::move(descriptor)) {}

HoppingModel TimeDependentHopping::at(double t) const {
  if (static_model_) return *static_model_;
  return eval_(t);
}

HoppingModel uniform_hopping(const Grid2D& grid, double J, bool with_diagonals) {
  if (!(J > 0.0)) {
    throw PreconditionError("uniform_hopping: J must be positive");
  }
  HoppingModel m{grid,
                 make_link_field(grid, LinkDir::x, -J),
                 make_link_field(grid, LinkDir::y, -J),
                 make_site_field(grid),
                 std::nullopt,
                 std::nullopt,
                 std::nullopt};
  if (with_diagonals) {
    m.t_diag_up = make_link_field(grid, LinkDir::diag_up, -J);
    m.t_diag_down = make_link_field(grid, LinkDir::diag_down, -J);
  }
  m.onsite = incident_hopping_sum(m);
  return m;
}

HoppingModel trap_hopping(const ConformalFamily& family, const Grid2D& grid,
                          OnsiteMode mode) {
  return metric_to_hopping(family_to_metric(family, grid), mode);
}

double flrw_tunneling(const Schedule& scale_factor, double J0, double t) {
  const double a = scale_factor(t);
  if (!(a > 0.0)) {
    throw PreconditionError("flrw: scale factor must be positive (a(" +
                            std::to_string(t) + ") = " + std::to_string(a) + ")");
  }
  return J0 / (a * a);
}

double flrw_depth(const Schedule& scale_factor, double depth_ref, double t) {
  const double a = scale_factor(t);
  if (!(a > 0.0)) {
    throw PreconditionError("flrw: scale factor must be positive");
  }
  return depth_ref + std::log(a);
}

TimeDependentHopping flrw_hopping(const Schedule& scale_factor, double J0,
                                  const Grid2D& grid, double t0, double t1) {
  if (scale_factor.kind() != ScheduleKind::scale_factor) {
    throw PreconditionError("flrw_hopping: schedule must be a scale factor");
  }
  if (!(J0 > 0.0)) throw PreconditionError("flrw_hopping: J0 must be positive");
  scale_factor.require_positive_on(t0, t1);
  auto eval = [scale_factor, J0, grid](double t) {
    HoppingModel m = uniform_hopping(grid, flrw_tunneling(scale_factor, J0, t));
    m.schedule = scale_factor;
    return m;
  };
  return TimeDependentHopping(grid, eval, scale_factor);
}

HoppingModel metric_wave_hopping(double J, const Schedule& h, const Grid2D& grid,
                                 double t) {
  if (!(J > 0.0)) {
    throw PreconditionError("metric_wave_hopping: J must be positive");
  }
  if (!(h.sup_abs() < J)) {
    throw PreconditionError("metric_wave_hopping: wave amplitude sup|h| = " +
                            std::to_string(h.sup_abs()) +
                            " must stay below J = " + std::to_string(J));
  }
  HoppingModel m{grid,
                 make_link_field(grid, LinkDir::x, -J),
                 make_link_field(grid, LinkDir::y, -J),
                 make_site_field(grid),
                 make_link_field(grid, LinkDir::diag_up),
                 make_link_field(grid, LinkDir::diag_down),
                 h};
  LinkField& up = *m.t_diag_up;
  LinkField& down = *m.t_diag_down;
  for (int j = 0; j < up.rows(); ++j) {
    for (int i = 0; i < up.cols(); ++i) {
      const Point c = link_midpoint(grid, LinkDir::diag_up, i, j);
      const double hv = h(t - (c.x - c.y));
      up(i, j) = -J + hv;
      down(i, j) = -J - hv;
    }
  }
  m.onsite = incident_hopping_sum(m);
  return m;
}

TimeDependentHopping metric_wave(double J, const Schedule& h,
                                 const Grid2D& grid) {
  // Validate eagerly so errors surface before any evolution starts.
  (void)metric_wave_hopping(J, h, grid, 0.0);
  auto eval = [J, h, grid](double t) {
    return metric_wave_hopping(J, h, grid, t);
  };
  return TimeDependentHopping(grid, eval, h);
}

HoppingModel beam_hopping(double J0, double A0, double alpha,
                          const Grid2D& grid) {
  if (!(J0 > 0.0)) throw PreconditionError("beam_hopping: J0 must be positive");
  if (!(alpha > 0.0)) {
    throw PreconditionError("beam_hopping: alpha must be positive");
  }
  auto amplitude = [&](double s) {
    const double sqrt_f = std::exp(-0.5 * alpha * s * s);  // sqrt(exp(-alpha s^2))
    return -J0 * std::exp(-2.0 * A0 * sqrt_f);
  };
  HoppingModel m{grid,
                 make_link_field(grid, LinkDir::x),
                 make_link_field(grid, LinkDir::y),
                 make_site_field(grid),
                 std::nullopt,
                 std::nullopt,
                 std::nullopt};
  for (int j = 0; j < m.t_x.rows(); ++j)
    for (int i = 0; i < m.t_x.cols(); ++i)
      m.t_x(i, j) = amplitude(link_midpoint(grid, LinkDir::x, i, j).y);
  for (int j = 0; j < m.t_y.rows(); ++j)
    for (int i = 0; i < m.t_y.cols(); ++i)
      m.t_y(i, j) = amplitude(link_midpoint(grid, LinkDir::y, i, j).x);
  m.onsite = incident_hopping_sum(m);
  return m;
}

}  // namespace curvlat
