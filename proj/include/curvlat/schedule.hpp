#pragma once

#include <string>
#include <utility>
#include <vector>

namespace curvlat {

enum class ScheduleKind { lattice_depth, scale_factor, wave_profile };
enum class ScheduleShape {
  constant,        // c
  exponential,     // amplitude * exp(rate * t)
  power_law,       // amplitude * (t / t_ref)^exponent, t > 0
  gaussian_pulse,  // amplitude * exp(-((t - center) / width)^2)
  sine,            // amplitude * sin(wavenumber * t + phase)
  tabulated        // piecewise linear through (t_k, v_k), clamped outside
};

/// Scalar function of time (or of the retarded coordinate u = t - (x - y)
/// for wave profiles) with a closed-form or tabulated descriptor.
class Schedule {
 public:
  using Parameters = std::vector<std::pair<std::string, double>>;

  static Schedule constant(ScheduleKind kind, double value);
  static Schedule exponential(ScheduleKind kind, double amplitude, double rate);
  static Schedule power_law(ScheduleKind kind, double amplitude, double t_ref,
                            double exponent);
  static Schedule gaussian_pulse(ScheduleKind kind, double amplitude,
                                 double width, double center = 0.0);
  static Schedule sine(ScheduleKind kind, double amplitude, double wavenumber,
                       double phase = 0.0);
  static Schedule tabulated(ScheduleKind kind, std::vector<double> times,
                            std::vector<double> values);

  double operator()(double t) const;

  ScheduleKind kind() const { return kind_; }
  ScheduleShape shape() const { return shape_; }
  const Parameters& parameters() const { return params_; }
  double parameter(const std::string& name) const;
  const std::vector<double>& table_times() const { return times_; }
  const std::vector<double>& table_values() const { return values_; }

  /// sup |value| over the whole real line (infinite for growing shapes).
  double sup_abs() const;

  /// Throws PreconditionError if a scale factor is not strictly positive on
  /// [t0, t1].
  void require_positive_on(double t0, double t1) const;

  /// Same schedule with the sign of its values flipped.
  Schedule negated() const;

 private:
  Schedule(ScheduleKind kind, ScheduleShape shape, Parameters params)
      : kind_(kind), shape_(shape), params_(std::move(params)) {}

  ScheduleKind kind_;
  ScheduleShape shape_;
  Parameters params_;
  std::vector<double> times_;
  std::vector<double> values_;
};

std::string to_string(ScheduleKind kind);
std::string to_string(ScheduleShape shape);
ScheduleKind schedule_kind_from_string(const std::string& s);
ScheduleShape schedule_shape_from_string(const std::string& s);

/// Tunneling amplitude J(A) = J_ref exp(-2 (A - A_ref)) for lattice depth
/// amplitude A (U = A^2 sin^2(kx), A in units sqrt(E_R)). `valid` is false
/// once J reaches 2/pi^2 E_R, where the exponential law stops holding.
struct TunnelingEstimate {
  double J = 0.0;
  bool valid = true;
};

TunnelingEstimate depth_to_tunneling(double depth, double depth_ref,
                                     double J_ref);

/// Inverse of depth_to_tunneling for the depth: A = A_ref - ln(J / J_ref)/2.
double tunneling_to_depth(double J, double depth_ref, double J_ref);

inline constexpr double kTunnelingValidityLimit = 0.20264236728467555;  // 2/pi^2

}  // namespace curvlat
