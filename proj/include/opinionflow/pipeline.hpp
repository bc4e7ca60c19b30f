#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "opinionflow/clustering.hpp"
#include "opinionflow/control.hpp"
#include "opinionflow/dynamics.hpp"
#include "opinionflow/scenario.hpp"

namespace opinionflow {

struct RunOptions {
  double cluster_tol = 0.5;
  std::optional<Engine> engine;  // overrides scenario.sim.engine
  std::optional<double> t_bar;   // overrides scenario.control.t_bar
  double zero_tol = kDefaultZeroTol;
  double stability_tol = kDefaultStabilityTol;
};

/// Turns the scenario's control section into a schedule.
ControlSchedule resolve_schedule(const Scenario& scenario, const RunOptions& options);

/// Connectivity, spectrum, stability and either the steady state (stable)
/// or the drift laws (unstable), evaluated for b + u0 where u0 is the
/// control in force once the schedule has settled.
nlohmann::ordered_json analyze_report(const Scenario& scenario, const RunOptions& options);

struct SimulationResult {
  Trajectory trajectory;
  nlohmann::ordered_json summary;
};

/// Simulates the scenario's schedule. The summary carries the final state,
/// its clusters and the largest deviation of every zero mode from its
/// piecewise-affine law.
SimulationResult run_simulation(const Scenario& scenario, const RunOptions& options);

struct DesignResult {
  ControlSchedule schedule;
  nlohmann::ordered_json schedule_json;
  nlohmann::ordered_json verification;
};

/// Synthesizes a schedule reaching x_d, then simulates it long enough for
/// the slowest nonzero mode to decay by 1e-13 after the switch and reports
/// |x(T) - x_d|_inf.
DesignResult run_design(const Scenario& scenario, const Vector& x_d, const RunOptions& options);

/// `header t,x1,...,xn`, one row per sample, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

nlohmann::ordered_json schedule_to_json(const ControlSchedule& schedule);
nlohmann::ordered_json clusters_to_json(const ClusterPartition& partition);

/// Random weighted digraph scenario (weights in (0, 2], x0 and b uniform in
/// [-10, 10]) for experiments; deterministic for a given seed.
nlohmann::ordered_json generate_scenario(std::uint64_t seed, int n);

}  // namespace opinionflow
