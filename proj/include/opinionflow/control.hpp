#pragma once

#include <limits>
#include <vector>

#include "opinionflow/graph.hpp"
#include "opinionflow/spectral.hpp"
#include "opinionflow/types.hpp"

namespace opinionflow {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

struct ControlSegment {
  double t_start = 0.0;
  double t_end = kForever;
  Vector u;
};

/// Piecewise-constant control u(t). Segments are contiguous, start at 0 and
/// the last one is unbounded. A segment [t_start, t_end) owns its left end;
/// the switch instant itself is where the integrator breaks its step.
class ControlSchedule {
 public:
  /// Throws Error(kValidation) when the segments violate the invariants and
  /// Error(kDimensionMismatch) when control vectors differ in length.
  explicit ControlSchedule(std::vector<ControlSegment> segments);

  static ControlSchedule constant(Vector u);
  static ControlSchedule zero(int n) { return constant(Vector::Zero(n)); }

  const std::vector<ControlSegment>& segments() const noexcept { return segments_; }
  int size() const noexcept { return static_cast<int>(segments_.front().u.size()); }

  /// Index of the segment in force at time t.
  std::size_t segment_at(double t) const;
  const Vector& control_at(double t) const { return segments_[segment_at(t)].u; }

  /// Finite switch times, ascending.
  std::vector<double> switch_times() const;

 private:
  std::vector<ControlSegment> segments_;
};

struct ReachabilityVerdict {
  bool reachable = false;
  /// w_i^T x_d - w_i^T x0 per zero mode.
  std::vector<double> gaps;
};

ReachabilityVerdict is_reachable(const ZeroEigenstructure& eig, const Vector& x0,
                                 const Vector& x_d, double tol = kDefaultStabilityTol);

/// u = L x_d - b. Steers to x_d iff x_d is reachable from x0.
Vector design_stabilizing_control(const Laplacian& lap, const Vector& x_d, const Vector& b);

/// One segment with u = L x_d - b when x_d is reachable. Otherwise stage 1
/// on [0, t_bar) applies u1 = L x_d - b + sum_i v_i alpha_i with
/// alpha_i = (w_i^T x_d - w_i^T x0) / t_bar, which moves every conserved
/// quantity onto its target value exactly at t_bar; stage 2 then applies
/// L x_d - b. Throws Error(kInvalidHorizon) unless t_bar is finite and > 0.
ControlSchedule design_two_stage_control(const Laplacian& lap, const ZeroEigenstructure& eig,
                                         const Vector& x0, const Vector& x_d, const Vector& b,
                                         double t_bar, double tol = kDefaultStabilityTol);

}  // namespace opinionflow
