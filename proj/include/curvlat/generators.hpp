#pragma once

#include <functional>
#include <optional>

#include "curvlat/conformal.hpp"
#include "curvlat/hopping.hpp"
#include "curvlat/schedule.hpp"

namespace curvlat {

/// A hopping model that may vary in time. Evaluation is a pure function of
/// t and safe to call concurrently.
class TimeDependentHopping {
 public:
  explicit TimeDependentHopping(HoppingModel model);
  TimeDependentHopping(Grid2D grid, std::function<HoppingModel(double)> eval,
                       Schedule descriptor);

  HoppingModel at(double t) const;
  bool is_static() const { return static_model_.has_value(); }
  const Grid2D& grid() const { return grid_; }
  const std::optional<Schedule>& descriptor() const { return descriptor_; }

 private:
  Grid2D grid_;
  std::optional<HoppingModel> static_model_;
  std::function<HoppingModel(double)> eval_;
  std::optional<Schedule> descriptor_;
};

/// Constant hopping -J on every nearest-neighbour link (and on both diagonal
/// families when requested); V = sum of incident |T|.
HoppingModel uniform_hopping(const Grid2D& grid, double J,
                             bool with_diagonals = false);

/// Radial trap hopping: the conformal family metric pushed through the
/// dictionary.
HoppingModel trap_hopping(const ConformalFamily& family, const Grid2D& grid,
                          OnsiteMode mode);

/// J(t) = J0 / a(t)^2 so that the reconstructed metric is a(t)^{-2} delta.
double flrw_tunneling(const Schedule& scale_factor, double J0, double t);

/// Lattice depth realising the FLRW tunneling: A(t) = A_ref + ln a(t).
double flrw_depth(const Schedule& scale_factor, double depth_ref, double t);

/// Uniform model with J(t) = J0 / a(t)^2. Checks a > 0 on [t0, t1].
TimeDependentHopping flrw_hopping(const Schedule& scale_factor, double J0,
                                  const Grid2D& grid, double t0, double t1);

/// Metric-wave snapshot at time t: nearest-neighbour links carry -J, the
/// diagonal families carry -J + h(t - (x - y)) (up) and -J - h(t - (x - y))
/// (down) evaluated at the plaquette centre. Requires sup|h| < J.
HoppingModel metric_wave_hopping(double J, const Schedule& h,
                                 const Grid2D& grid, double t);

TimeDependentHopping metric_wave(double J, const Schedule& h,
                                 const Grid2D& grid);

/// Finite-width Gaussian beams: x-links -J0 exp(-2 A0 sqrt(f(y))),
/// y-links -J0 exp(-2 A0 sqrt(f(x))), f(s) = exp(-alpha s^2), evaluated at
/// link midpoints.
HoppingModel beam_hopping(double J0, double A0, double alpha,
                          const Grid2D& grid);

}  // namespace curvlat
