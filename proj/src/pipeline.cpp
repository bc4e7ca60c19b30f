#include "opinionflow/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "opinionflow/analysis.hpp"
#include "opinionflow/error.hpp"
#include "opinionflow/spectral.hpp"

namespace opinionflow {
namespace {

using nlohmann::ordered_json;

ordered_json to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json connectivity_to_json(const ConnectivityReport& c) {
  ordered_json edges = ordered_json::array();
  for (const auto& [a, b] : c.condensation_edges) edges.push_back({a, b});
  return {{"class", graph_class_name(c.graph_class)},
          {"sccs", c.sccs},
          {"condensation_edges", edges},
          {"sink_components", c.sink_components},
          {"globally_reachable", c.globally_reachable}};
}

ordered_json spectrum_to_json(const Spectrum& s) {
  ordered_json eigs = ordered_json::array();
  for (const auto& z : s.eigenvalues) eigs.push_back({{"re", z.real()}, {"im", z.imag()}});
  return {{"eigenvalues", eigs}, {"zero_multiplicity", s.zero_multiplicity}};
}

SimParams effective_params(const Scenario& scenario, const RunOptions& options) {
  SimParams p = scenario.sim;
  if (options.engine) p.engine = *options.engine;
  return p;
}

// Largest |w_i^T x(t) - p_i(t)| per zero mode, where p_i is the piecewise
// affine law w_i^T x0 + integral of w_i^T (b + u(s)) ds.
std::vector<double> conservation_errors(const ZeroEigenstructure& eig, const Trajectory& traj, const Vector& x0,
                                        const Vector& b, const ControlSchedule& schedule) {
  std::vector<double> worst(eig.n_z, 0.0);
  Vector predicted = eig.w0.transpose() * x0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    if (k > 0) {
      const double t0 = traj.times[k - 1];
      const Vector& u = schedule.control_at(t0);
      predicted += eig.w0.transpose() * (b + u) * (traj.times[k] - t0);
    }
    const Vector actual = eig.w0.transpose() * traj.states[k];
    for (int i = 0; i < eig.n_z; ++i) worst[i] = std::max(worst[i], std::abs(actual(i) - predicted(i)));
  }
  return worst;
}

}  // namespace

ordered_json schedule_to_json(const ControlSchedule& schedule) {
  ordered_json segs = ordered_json::array();
  for (const ControlSegment& s : schedule.segments()) {
    segs.push_back({{"t_start", s.t_start},
                    {"t_end", std::isinf(s.t_end) ? ordered_json(nullptr) : ordered_json(s.t_end)},
                    {"u", to_json(s.u)}});
  }
  return {{"segments", segs}};
}

ordered_json clusters_to_json(const ClusterPartition& partition) {
  ordered_json groups = ordered_json::array();
  for (const ClusterGroup& g : partition.groups) groups.push_back({{"nodes", g.nodes}, {"value", g.value}});
  return {{"tolerance", partition.tolerance}, {"count", partition.groups.size()}, {"groups", groups}};
}

ControlSchedule resolve_schedule(const Scenario& scenario, const RunOptions& options) {
  const int n = scenario.size();
  const ControlSpec& c = scenario.control;
  switch (c.type) {
    case ControlType::kNone:
      return ControlSchedule::zero(n);
    case ControlType::kConstant:
      return ControlSchedule::constant(c.u);
    case ControlType::kTarget: {
      const Laplacian lap = Laplacian::from_graph(scenario.graph);
      return ControlSchedule::constant(design_stabilizing_control(lap, c.x_d, scenario.b));
    }
    case ControlType::kTwoStage: {
      const Laplacian lap = Laplacian::from_graph(scenario.graph);
      const ZeroEigenstructure eig = zero_eigenstructure(lap, options.zero_tol);
      return design_two_stage_control(lap, eig, scenario.x0, c.x_d, scenario.b, options.t_bar.value_or(c.t_bar),
                                      options.stability_tol);
    }
  }
  throw Error(ErrorCode::kValidation, "unknown control type");
}

ordered_json analyze_report(const Scenario& scenario, const RunOptions& options) {
  const Laplacian lap = Laplacian::from_graph(scenario.graph);
  const ConnectivityReport conn = connectivity_report(scenario.graph);
  const Spectrum spec = spectrum(lap, options.zero_tol);
  const ZeroEigenstructure eig = zero_eigenstructure(lap, options.zero_tol);
  const ControlSchedule schedule = resolve_schedule(scenario, options);
  const Vector b_eff = scenario.b + schedule.segments().back().u;
  const StabilityReport stab = stability_check(eig, b_eff, conn, options.stability_tol);

  ordered_json report;
  report["name"] = scenario.name;
  report["approximate_topology"] = scenario.approximate_topology;
  report["n"] = scenario.size();
  report["connectivity"] = connectivity_to_json(conn);
  report["spectrum"] = spectrum_to_json(spec);
  report["control"] = control_type_name(scenario.control.type);
  report["effective_bias"] = to_json(b_eff);
  report["stable"] = stab.stable;
  ordered_json proj = ordered_json::array();
  for (std::size_t i = 0; i < stab.projections.size(); ++i)
    proj.push_back({{"mode", i + 1}, {"value", stab.projections[i]}});
  report["projections"] = proj;
  report["special_case"] = special_case_name(stab.special_case);
  if (stab.special_case != SpecialCase::kGeneral) report["special_value"] = stab.special_value;
  report["stability_tol"] = options.stability_tol;

  if (stab.stable) {
    const SteadyStatePrediction ss = steady_state(lap, eig, scenario.x0, b_eff, options.stability_tol);
    report["x_bar"] = to_json(ss.x_bar);
    report["residual"] = ss.residual;
    report["conserved_values"] = ss.conserved_values;
    report["clusters"] = clusters_to_json(detect_clusters(ss.x_bar, options.cluster_tol));
  } else {
    ordered_json drift = ordered_json::array();
    for (const ModeDrift& d : drift_rates(eig, scenario.x0, b_eff))
      drift.push_back({{"mode", d.mode}, {"slope", d.slope}, {"intercept", d.intercept}});
    report["drift"] = drift;
  }
  return report;
}

SimulationResult run_simulation(const Scenario& scenario, const RunOptions& options) {
  const Laplacian lap = Laplacian::from_graph(scenario.graph);
  const ZeroEigenstructure eig = zero_eigenstructure(lap, options.zero_tol);
  const ControlSchedule schedule = resolve_schedule(scenario, options);
  const SimParams params = effective_params(scenario, options);

  SimulationResult out{simulate(lap, scenario.x0, scenario.b, schedule, params), {}};
  const Trajectory& traj = out.trajectory;
  const Vector& final_state = traj.states.back();
  const bool settles =
      stability_check(eig, scenario.b + schedule.segments().back().u, options.stability_tol).stable;

  ordered_json& s = out.summary;
  s["name"] = scenario.name;
  s["engine"] = engine_name(params.engine);
  s["samples"] = traj.times.size();
  s["t_end"] = traj.times.back();
  s["segment_boundaries"] = traj.segment_boundaries;
  s["final_state"] = to_json(final_state);
  s["clusters"] = clusters_to_json(detect_clusters(final_state, options.cluster_tol));
  s["conservation_max_error"] = conservation_errors(eig, traj, scenario.x0, scenario.b, schedule);
  s["max_abs"] = traj.max_abs;
  s["stable"] = settles;
  if (!settles) s["warning"] = "forcing has a nonzero zero-mode projection; opinions drift without bound";
  return out;
}

DesignResult run_design(const Scenario& scenario, const Vector& x_d, const RunOptions& options) {
  const int n = scenario.size();
  if (x_d.size() != n)
    throw Error(ErrorCode::kDimensionMismatch,
                "target has length " + std::to_string(x_d.size()) + ", expected " + std::to_string(n));
  const double t_bar = options.t_bar.value_or(scenario.control.t_bar);

  const Laplacian lap = Laplacian::from_graph(scenario.graph);
  const ZeroEigenstructure eig = zero_eigenstructure(lap, options.zero_tol);
  const Spectrum spec = spectrum(lap, options.zero_tol);
  const ReachabilityVerdict reach = is_reachable(eig, scenario.x0, x_d, options.stability_tol);
  ControlSchedule schedule =
      design_two_stage_control(lap, eig, scenario.x0, x_d, scenario.b, t_bar, options.stability_tol);
  const bool two_stage = schedule.segments().size() == 2;

  // exp(-30) ~ 1e-13, with room for polynomial factors of defective modes.
  const double settle_from = two_stage ? t_bar : 0.0;
  double horizon = std::max(scenario.sim.t_end, settle_from + 1.0);
  if (const auto slow = spec.slowest_nonzero()) horizon = std::max(horizon, settle_from + 30.0 / std::abs(slow->real()));

  SimParams params = effective_params(scenario, options);
  params.t_end = horizon;
  params.dt = std::max(params.dt, horizon / 2000.0);

  const Trajectory traj = simulate(lap, scenario.x0, scenario.b, schedule, params);
  const Vector& final_state = traj.states.back();
  const double error = (final_state - x_d).cwiseAbs().maxCoeff();

  DesignResult out{std::move(schedule), {}, {}};
  ordered_json& sj = out.schedule_json;
  sj = schedule_to_json(out.schedule);
  sj["t_bar"] = t_bar;
  sj["two_stage"] = two_stage;
  sj["x_d"] = to_json(x_d);

  ordered_json& v = out.verification;
  v["name"] = scenario.name;
  v["reachable"] = reach.reachable;
  v["gaps"] = reach.gaps;
  v["two_stage"] = two_stage;
  v["t_bar"] = t_bar;
  if (two_stage) {
    const Vector alpha = Eigen::Map<const Vector>(reach.gaps.data(), eig.n_z) / t_bar;
    v["alpha"] = to_json(alpha);
    const auto at = std::find(traj.times.begin(), traj.times.end(), t_bar);
    if (at != traj.times.end()) {
      const Vector& x_switch = traj.states[static_cast<std::size_t>(at - traj.times.begin())];
      v["handoff_gaps"] = to_json(eig.w0.transpose() * (x_switch - x_d));
    }
  }
  v["engine"] = engine_name(params.engine);
  v["horizon"] = horizon;
  v["final_state"] = to_json(final_state);
  v["error_inf"] = error;
  v["converged"] = error < 1e-3;
  v["clusters"] = clusters_to_json(detect_clusters(final_state, options.cluster_tol));
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const Eigen::Index n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  out << 't';
  for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
  out << '\n';
  char buf[32];
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", trajectory.times[k]);
    out << buf;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", trajectory.states[k](i));
      out << ',' << buf;
    }
    out << '\n';
  }
}

ordered_json generate_scenario(std::uint64_t seed, int n) {
  if (n < 1) throw Error(ErrorCode::kValidation, "generated scenario needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> opinion(-10.0, 10.0);

  ordered_json edges = ordered_json::array();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j || unit(rng) >= 0.35) continue;
      edges.push_back({{"from", i}, {"to", j}, {"weight", 2.0 - 2.0 * unit(rng)}});
    }
  }
  ordered_json x0 = ordered_json::array(), b = ordered_json::array();
  for (int i = 0; i < n; ++i) x0.push_back(opinion(rng));
  for (int i = 0; i < n; ++i) b.push_back(opinion(rng));
  return {{"name", "random-" + std::to_string(seed)},
          {"graph", {{"n", n}, {"edges", edges}}},
          {"x0", x0},
          {"b", b},
          {"control", {{"type", "none"}}},
          {"sim", {{"t_end", 20.0}, {"dt", 0.05}, {"engine", "exact"}}}};
}

}  // namespace opinionflow
