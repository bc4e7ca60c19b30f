#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "opinionflow/control.hpp"
#include "opinionflow/graph.hpp"
#include "opinionflow/types.hpp"

namespace opinionflow {

enum class Engine { kExact, kRk4 };

std::string_view engine_name(Engine e) noexcept;

struct SimParams {
  double t_end = 20.0;
  /// Output sampling step.
  double dt = 0.05;
  Engine engine = Engine::kExact;
  /// Internal RK4 step; must not exceed dt.
  double rk4_step = 1e-3;

  /// Throws Error(kValidation) unless t_end > 0, dt > 0, 0 < rk4_step <= dt.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  /// Sample indices at which a new control segment takes over.
  std::vector<std::size_t> segment_boundaries;
  /// max |x_i(t)| over all samples; large values flag divergence.
  double max_abs = 0.0;
};

/// Exact solution at time tau of xdot = -L x + c, x(0) = x_start, from the
/// exponential of the augmented matrix [[-L, c], [0, 0]].
Vector propagate_exact(const Laplacian& lap, const Vector& x_start, const Vector& c, double tau);

/// Classic RK4 on the same system with ceil(tau / step) equal steps.
Vector propagate_rk4(const Laplacian& lap, const Vector& x_start, const Vector& c, double tau,
                     double step);

/// Samples at k*dt plus every control switch inside (0, t_end) plus t_end.
/// Within each sample interval the forcing b + u is constant.
Trajectory simulate(const Laplacian& lap, const Vector& x0, const Vector& b,
                    const ControlSchedule& schedule, const SimParams& params);

}  // namespace opinionflow
