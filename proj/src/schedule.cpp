#include "curvlat/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvlat/errors.hpp"

namespace curvlat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Schedule Schedule::constant(ScheduleKind kind, double value) {
  return Schedule(kind, ScheduleShape::constant, {{"value", value}});
}

Schedule Schedule::exponential(ScheduleKind kind, double amplitude,
                               double rate) {
  return Schedule(kind, ScheduleShape::exponential,
                  {{"amplitude", amplitude}, {"rate", rate}});
}

Schedule Schedule::power_law(ScheduleKind kind, double amplitude, double t_ref,
                             double exponent) {
  if (!(t_ref > 0.0)) {
    throw PreconditionError("Schedule::power_law: t_ref must be positive");
  }
  return Schedule(kind, ScheduleShape::power_law,
                  {{"amplitude", amplitude},
                   {"t_ref", t_ref},
                   {"exponent", exponent}});
}

Schedule Schedule::gaussian_pulse(ScheduleKind kind, double amplitude,
                                  double width, double center) {
  if (!(width > 0.0)) {
    throw PreconditionError("Schedule::gaussian_pulse: width must be positive");
  }
  return Schedule(kind, ScheduleShape::gaussian_pulse,
                  {{"amplitude", amplitude}, {"width", width}, {"center", center}});
}

Schedule Schedule::sine(ScheduleKind kind, double amplitude, double wavenumber,
                        double phase) {
  return Schedule(kind, ScheduleShape::sine,
                  {{"amplitude", amplitude},
                   {"wavenumber", wavenumber},
                   {"phase", phase}});
}

Schedule Schedule::tabulated(ScheduleKind kind, std::vector<double> times,
                             std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw PreconditionError(
        "Schedule::tabulated: need >= 2 samples with matching lengths");
  }
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw PreconditionError(
        "Schedule::tabulated: times must be strictly increasing");
  }
  Schedule s(kind, ScheduleShape::tabulated, {});
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

double Schedule::parameter(const std::string& name) const {
  for (const auto& [key, value] : params_) {
    if (key == name) return value;
  }
  throw PreconditionError("Schedule: no parameter '" + name + "'");
}

double Schedule::operator()(double t) const {
  switch (shape_) {
    case ScheduleShape::constant:
      return params_[0].second;
    case ScheduleShape::exponential:
      return params_[0].second * std::exp(params_[1].second * t);
    case ScheduleShape::power_law:
      return params_[0].second *
             std::pow(t / params_[1].second, params_[2].second);
    case ScheduleShape::gaussian_pulse: {
      const double z = (t - params_[2].second) / params_[1].second;
      return params_[0].second * std::exp(-z * z);
    }
    case ScheduleShape::sine:
      return params_[0].second *
             std::sin(params_[1].second * t + params_[2].second);
    case ScheduleShape::tabulated: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t k = static_cast<std::size_t>(it - times_.begin());
      const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
      return (1.0 - w) * values_[k - 1] + w * values_[k];
    }
  }
  return 0.0;
}

double Schedule::sup_abs() const {
  switch (shape_) {
    case ScheduleShape::constant:
      return std::abs(params_[0].second);
    case ScheduleShape::exponential:
      return params_[0].second == 0.0 ? 0.0 : kInf;
    case ScheduleShape::power_law:
      return (params_[0].second == 0.0 || params_[2].second == 0.0)
                 ? std::abs(params_[0].second)
                 : kInf;
    case ScheduleShape::gaussian_pulse:
    case ScheduleShape::sine:
      return std::abs(params_[0].second);
    case ScheduleShape::tabulated: {
      double m = 0.0;
      for (double v : values_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return kInf;
}

void Schedule::require_positive_on(double t0, double t1) const {
  auto fail = [&](const std::string& why) {
    throw PreconditionError("Schedule (" + to_string(kind_) + "): " + why);
  };
  switch (shape_) {
    case ScheduleShape::constant:
    case ScheduleShape::exponential:
      if (!(params_[0].second > 0.0)) fail("value must be positive");
      return;
    case ScheduleShape::power_law:
      if (!(params_[0].second > 0.0)) fail("amplitude must be positive");
      if (!(t0 > 0.0)) fail("power law requires t > 0 on the whole interval");
      return;
    case ScheduleShape::gaussian_pulse:
      if (!(params_[0].second > 0.0)) fail("amplitude must be positive");
      return;
    case ScheduleShape::sine:
      fail("a sine changes sign and cannot be a scale factor");
      return;
    case ScheduleShape::tabulated:
      for (double v : values_) {
        if (!(v > 0.0)) fail("tabulated values must be positive");
      }
      return;
  }
  (void)t1;
}

Schedule Schedule::negated() const {
  Schedule s = *this;
  switch (shape_) {
    case ScheduleShape::constant:
    case ScheduleShape::exponential:
    case ScheduleShape::power_law:
    case ScheduleShape::gaussian_pulse:
    case ScheduleShape::sine:
      s.params_[0].second = -s.params_[0].second;
      break;
    case ScheduleShape::tabulated:
      for (double& v : s.values_) v = -v;
      break;
  }
  return s;
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::lattice_depth:
      return "lattice-depth";
    case ScheduleKind::scale_factor:
      return "scale-factor";
    case ScheduleKind::wave_profile:
      return "wave-profile";
  }
  return "?";
}

std::string to_string(ScheduleShape shape) {
  switch (shape) {
    case ScheduleShape::constant:
      return "constant";
    case ScheduleShape::exponential:
      return "exponential";
    case ScheduleShape::power_law:
      return "power-law";
    case ScheduleShape::gaussian_pulse:
      return "gaussian-pulse";
    case ScheduleShape::sine:
      return "sine";
    case ScheduleShape::tabulated:
      return "tabulated";
  }
  return "?";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
  for (auto k : {ScheduleKind::lattice_depth, ScheduleKind::scale_factor,
                 ScheduleKind::wave_profile}) {
    if (to_string(k) == s) return k;
  }
  throw PreconditionError("unknown schedule kind '" + s + "'");
}

ScheduleShape schedule_shape_from_string(const std::string& s) {
  for (auto k : {ScheduleShape::constant, ScheduleShape::exponential,
                 ScheduleShape::power_law, ScheduleShape::gaussian_pulse,
                 ScheduleShape::sine, ScheduleShape::tabulated}) {
    if (to_string(k) == s) return k;
  }
  throw PreconditionError("unknown schedule shape '" + s + "'");
}

TunnelingEstimate depth_to_tunneling(double depth, double depth_ref,
                                     double J_ref) {
  const double J = J_ref * std::exp(-2.0 * (depth - depth_ref));
  return {J, J < kTunnelingValidityLimit};
}

double tunneling_to_depth(double J, double depth_ref, double J_ref) {
  if (!(J > 0.0) || !(J_ref > 0.0)) {
    throw PreconditionError("tunneling_to_depth: J and J_ref must be positive");
  }
  return depth_ref - 0.5 * std::log(J / J_ref);
}

}  // namespace curvlat
