#include "opinionflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "opinionflow/error.hpp"

namespace opinionflow {
namespace {

// exp(tau * [[-L, c], [0, 0]])
Matrix augmented_propagator(const Matrix& l, const Vector& c, double tau) {
  const Eigen::Index n = l.rows();
  Matrix aug = Matrix::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = -tau * l;
  aug.topRightCorner(n, 1) = tau * c;
  Matrix e = aug.exp();
  if (!e.allFinite()) throw Error(ErrorCode::kExpmFailure, "matrix exponential overflowed");
  return e;
}

Vector apply(const Matrix& prop, const Vector& x) {
  const Eigen::Index n = x.size();
  return prop.topLeftCorner(n, n) * x + prop.topRightCorner(n, 1);
}

void check_sizes(const Laplacian& lap, const Vector& x, const Vector& c) {
  if (x.size() != lap.size() || c.size() != lap.size())
    throw Error(ErrorCode::kDimensionMismatch, "state or forcing does not match the graph size");
}

// Sample grid: k*dt, the switch times and t_end. A grid point that lands
// within rounding distance of a switch (or of t_end) yields to it so that
// switch times appear verbatim.
std::vector<double> sample_times(double t_end, double dt, const std::vector<double>& switches) {
  const double snap = 1e-12 * std::max(1.0, t_end);
  std::vector<double> pinned{t_end};
  for (double s : switches)
    if (s > 0.0 && s < t_end) pinned.push_back(s);

  std::vector<double> times{0.0};
  for (long k = 1;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= t_end - snap) break;
    const bool near_pin =
        std::any_of(pinned.begin(), pinned.end(), [&](double p) { return std::abs(p - t) <= snap; });
    if (!near_pin) times.push_back(t);
  }
  times.insert(times.end(), pinned.begin(), pinned.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace

std::string_view engine_name(Engine e) noexcept { return e == Engine::kExact ? "exact" : "rk4"; }

void SimParams::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::kValidation, "sim.t_end must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::kValidation, "sim.dt must be positive");
  if (!(rk4_step > 0.0) || rk4_step > dt)
    throw Error(ErrorCode::kValidation, "sim.rk4_step must be positive and no larger than sim.dt");
}

Vector propagate_exact(const Laplacian& lap, const Vector& x_start, const Vector& c, double tau) {
  check_sizes(lap, x_start, c);
  if (!(tau >= 0.0)) throw Error(ErrorCode::kValidation, "propagation time must be nonnegative");
  if (tau == 0.0) return x_start;
  return apply(augmented_propagator(lap.matrix(), c, tau), x_start);
}

Vector propagate_rk4(const Laplacian& lap, const Vector& x_start, const Vector& c, double tau, double step) {
  check_sizes(lap, x_start, c);
  if (!(tau >= 0.0)) throw Error(ErrorCode::kValidation, "propagation time must be nonnegative");
  if (!(step > 0.0)) throw Error(ErrorCode::kValidation, "RK4 step must be positive");
  if (tau == 0.0) return x_start;

  const Matrix& l = lap.matrix();
  const auto steps = static_cast<long>(std::ceil(tau / step - 1e-9));
  const double h = tau / static_cast<double>(std::max(1L, steps));
  auto f = [&](const Vector& x) -> Vector { return -l * x + c; };

  Vector x = x_start;
  for (long k = 0; k < std::max(1L, steps); ++k) {
    const Vector k1 = f(x);
    const Vector k2 = f(x + 0.5 * h * k1);
    const Vector k3 = f(x + 0.5 * h * k2);
    const Vector k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

Trajectory simulate(const Laplacian& lap, const Vector& x0, const Vector& b, const ControlSchedule& schedule,
                    const SimParams& params) {
  params.validate();
  check_sizes(lap, x0, b);
  if (schedule.size() != lap.size())
    throw Error(ErrorCode::kDimensionMismatch, "control schedule does not match the graph size");

  Trajectory traj;
  traj.times = sample_times(params.t_end, params.dt, schedule.switch_times());
  traj.states.reserve(traj.times.size());
  traj.states.push_back(x0);

  // Most intervals share the same length, so the exact engine reuses the
  // propagator of the previous interval while the segment is unchanged.
  Matrix cached;
  double cached_h = -1.0;
  std::size_t cached_segment = 0;

  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double t0 = traj.times[k];
    const double h = traj.times[k + 1] - t0;
    const std::size_t seg = schedule.segment_at(t0);
    if (k > 0 && seg != schedule.segment_at(traj.times[k - 1])) traj.segment_boundaries.push_back(k);
    const Vector c = b + schedule.segments()[seg].u;

    const Vector& x = traj.states.back();
    if (params.engine == Engine::kExact) {
      const double reuse_tol = 1e-13 * std::max(1.0, traj.times[k + 1]);
      if (cached_h < 0.0 || seg != cached_segment || std::abs(h - cached_h) > reuse_tol) {
        cached = augmented_propagator(lap.matrix(), c, h);
        cached_h = h;
        cached_segment = seg;
      }
      traj.states.push_back(apply(cached, x));
    } else {
      traj.states.push_back(propagate_rk4(lap, x, c, h, params.rk4_step));
    }
  }
  if (traj.times.size() > 1) {
    const std::size_t last = traj.times.size() - 1;
    if (schedule.segment_at(traj.times[last]) != schedule.segment_at(traj.times[last - 1]))
      traj.segment_boundaries.push_back(last);
  }

  for (const Vector& s : traj.states) traj.max_abs = std::max(traj.max_abs, s.cwiseAbs().maxCoeff());
  return traj;
}

}  // namespace opinionflow
