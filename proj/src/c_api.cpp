#include "opinionflow/opinionflow.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "opinionflow/error.hpp"
#include "opinionflow/graph.hpp"
#include "opinionflow/pipeline.hpp"
#include "opinionflow/scenario.hpp"
#include "opinionflow/spectral.hpp"

using namespace opinionflow;

struct opf_graph {
  Graph graph;
};

struct opf_scenario {
  Scenario scenario;
};

struct opf_trajectory {
  Trajectory trajectory;
  nlohmann::ordered_json summary;
};

namespace {

thread_local std::string g_last_error;

opf_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation: return OPF_ERR_VALIDATION;
    case ErrorCode::kParse: return OPF_ERR_PARSE;
    case ErrorCode::kIo: return OPF_ERR_IO;
    case ErrorCode::kDimensionMismatch: return OPF_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kInvalidHorizon: return OPF_ERR_INVALID_HORIZON;
    case ErrorCode::kIncompleteAssignment: return OPF_ERR_INCOMPLETE_ASSIGNMENT;
    case ErrorCode::kNotStable: return OPF_ERR_NOT_STABLE;
    case ErrorCode::kEigensolverFailure: return OPF_ERR_EIGENSOLVER;
    case ErrorCode::kDegenerateNullSpace: return OPF_ERR_DEGENERATE_NULL_SPACE;
    case ErrorCode::kSolverFailure: return OPF_ERR_SOLVER;
    case ErrorCode::kExpmFailure: return OPF_ERR_EXPM;
  }
  return OPF_ERR_INTERNAL;
}

opf_status fail(opf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
opf_status guarded(F&& body) {
  try {
    body();
    return OPF_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OPF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OPF_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RunOptions convert(const opf_run_options* o) {
  RunOptions r;
  if (!o) return r;
  r.cluster_tol = o->cluster_tol;
  if (o->engine == OPF_ENGINE_EXACT) r.engine = Engine::kExact;
  if (o->engine == OPF_ENGINE_RK4) r.engine = Engine::kRk4;
  if (o->t_bar > 0.0) r.t_bar = o->t_bar;
  r.zero_tol = o->zero_tol;
  r.stability_tol = o->stability_tol;
  return r;
}

#define OPF_REQUIRE(cond, what) \
  if (!(cond)) return fail(OPF_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* opf_version(void) { return "1.0.0"; }

const char* opf_status_name(opf_status status) {
  switch (status) {
    case OPF_OK: return "ok";
    case OPF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OPF_ERR_VALIDATION: return "validation";
    case OPF_ERR_PARSE: return "parse";
    case OPF_ERR_IO: return "io";
    case OPF_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case OPF_ERR_INVALID_HORIZON: return "invalid_horizon";
    case OPF_ERR_INCOMPLETE_ASSIGNMENT: return "incomplete_assignment";
    case OPF_ERR_NOT_STABLE: return "not_stable";
    case OPF_ERR_EIGENSOLVER: return "eigensolver_failure";
    case OPF_ERR_DEGENERATE_NULL_SPACE: return "degenerate_null_space";
    case OPF_ERR_SOLVER: return "solver_failure";
    case OPF_ERR_EXPM: return "expm_failure";
    case OPF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int opf_status_is_input_error(opf_status status) {
  switch (status) {
    case OPF_ERR_EIGENSOLVER:
    case OPF_ERR_DEGENERATE_NULL_SPACE:
    case OPF_ERR_SOLVER:
    case OPF_ERR_EXPM:
    case OPF_ERR_INTERNAL:
    case OPF_OK:
      return 0;
    default:
      return 1;
  }
}

const char* opf_last_error(void) { return g_last_error.c_str(); }

void opf_string_free(char* s) { std::free(s); }

opf_run_options opf_run_options_default(void) {
  return opf_run_options{0.5, OPF_ENGINE_SCENARIO, 0.0, kDefaultZeroTol, kDefaultStabilityTol};
}

opf_status opf_graph_create(int n, const opf_edge* edges, size_t edge_count, opf_graph** out) {
  OPF_REQUIRE(out, "out is null");
  OPF_REQUIRE(edges || edge_count == 0, "edges is null");
  *out = nullptr;
  return guarded([&] {
    std::vector<Edge> list;
    list.reserve(edge_count);
    for (size_t k = 0; k < edge_count; ++k) list.push_back({edges[k].from, edges[k].to, edges[k].weight});
    *out = new opf_graph{Graph::build(n, std::move(list))};
  });
}

void opf_graph_free(opf_graph* g) { delete g; }

int opf_graph_node_count(const opf_graph* g) { return g ? g->graph.size() : 0; }

opf_status opf_graph_laplacian(const opf_graph* g, double* out, size_t out_len) {
  OPF_REQUIRE(g && out, "null argument");
  const auto n = static_cast<size_t>(g->graph.size());
  OPF_REQUIRE(out_len >= n * n, "output buffer too small");
  return guarded([&] {
    const Matrix l = Laplacian::from_graph(g->graph).matrix();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out[i * n + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

opf_status opf_graph_connectivity_json(const opf_graph* g, char** out_json) {
  OPF_REQUIRE(g && out_json, "null argument");
  return guarded([&] {
    const ConnectivityReport c = connectivity_report(g->graph);
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [a, b] : c.condensation_edges) edges.push_back({a, b});
    nlohmann::ordered_json j = {{"class", graph_class_name(c.graph_class)},
                                {"sccs", c.sccs},
                                {"condensation_edges", edges},
                                {"sink_components", c.sink_components},
                                {"globally_reachable", c.globally_reachable}};
    *out_json = duplicate(j.dump());
  });
}

opf_status opf_graph_zero_multiplicity(const opf_graph* g, double zero_tol, int* out) {
  OPF_REQUIRE(g && out, "null argument");
  return guarded([&] { *out = zero_eigenstructure(Laplacian::from_graph(g->graph), zero_tol).n_z; });
}

opf_status opf_scenario_load(const char* path, opf_scenario** out) {
  OPF_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new opf_scenario{load_scenario(path)}; });
}

opf_status opf_scenario_parse(const char* json_text, opf_scenario** out) {
  OPF_REQUIRE(json_text && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new opf_scenario{parse_scenario(json_text)}; });
}

void opf_scenario_free(opf_scenario* s) { delete s; }

int opf_scenario_node_count(const opf_scenario* s) { return s ? s->scenario.size() : 0; }

opf_status opf_scenario_target(const opf_scenario* s, double* out, size_t out_len) {
  OPF_REQUIRE(s && out, "null argument");
  const Vector& x_d = s->scenario.control.x_d;
  if (x_d.size() == 0) return fail(OPF_ERR_VALIDATION, "scenario control section has no x_d");
  OPF_REQUIRE(out_len >= static_cast<size_t>(x_d.size()), "output buffer too small");
  std::copy(x_d.data(), x_d.data() + x_d.size(), out);
  return OPF_OK;
}

opf_status opf_analyze(const opf_scenario* s, const opf_run_options* options, char** out_report_json) {
  OPF_REQUIRE(s && out_report_json, "null argument");
  *out_report_json = nullptr;
  return guarded([&] { *out_report_json = duplicate(analyze_report(s->scenario, convert(options)).dump(2)); });
}

opf_status opf_simulate(const opf_scenario* s, const opf_run_options* options, opf_trajectory** out) {
  OPF_REQUIRE(s && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    SimulationResult r = run_simulation(s->scenario, convert(options));
    *out = new opf_trajectory{std::move(r.trajectory), std::move(r.summary)};
  });
}

opf_status opf_design(const opf_scenario* s, const double* x_d, size_t n, const opf_run_options* options,
                      char** out_schedule_json, char** out_verification_json) {
  OPF_REQUIRE(s && x_d && out_schedule_json && out_verification_json, "null argument");
  *out_schedule_json = nullptr;
  *out_verification_json = nullptr;
  return guarded([&] {
    const Vector target = Eigen::Map<const Vector>(x_d, static_cast<Eigen::Index>(n));
    const DesignResult r = run_design(s->scenario, target, convert(options));
    char* schedule = duplicate(r.schedule_json.dump(2));
    try {
      *out_verification_json = duplicate(r.verification.dump(2));
    } catch (...) {
      std::free(schedule);
      throw;
    }
    *out_schedule_json = schedule;
  });
}

opf_status opf_generate_scenario(uint64_t seed, int n, char** out_json) {
  OPF_REQUIRE(out_json, "null argument");
  *out_json = nullptr;
  return guarded([&] { *out_json = duplicate(generate_scenario(seed, n).dump(2)); });
}

void opf_trajectory_free(opf_trajectory* t) { delete t; }

size_t opf_trajectory_sample_count(const opf_trajectory* t) { return t ? t->trajectory.times.size() : 0; }

int opf_trajectory_node_count(const opf_trajectory* t) {
  return t && !t->trajectory.states.empty() ? static_cast<int>(t->trajectory.states.front().size()) : 0;
}

double opf_trajectory_time(const opf_trajectory* t, size_t sample) {
  if (!t || sample >= t->trajectory.times.size()) return 0.0;
  return t->trajectory.times[sample];
}

opf_status opf_trajectory_state(const opf_trajectory* t, size_t sample, double* out, size_t out_len) {
  OPF_REQUIRE(t && out, "null argument");
  OPF_REQUIRE(sample < t->trajectory.states.size(), "sample index out of range");
  const Vector& x = t->trajectory.states[sample];
  OPF_REQUIRE(out_len >= static_cast<size_t>(x.size()), "output buffer too small");
  std::copy(x.data(), x.data() + x.size(), out);
  return OPF_OK;
}

opf_status opf_trajectory_write_csv(const opf_trajectory* t, const char* path) {
  OPF_REQUIRE(t && path, "null argument");
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "' for writing");
    write_trajectory_csv(out, t->trajectory);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, std::string("failed writing '") + path + "'");
  });
}

opf_status opf_trajectory_csv(const opf_trajectory* t, char** out_csv) {
  OPF_REQUIRE(t && out_csv, "null argument");
  *out_csv = nullptr;
  return guarded([&] {
    std::ostringstream os;
    write_trajectory_csv(os, t->trajectory);
    *out_csv = duplicate(os.str());
  });
}

opf_status opf_trajectory_summary_json(const opf_trajectory* t, char** out_json) {
  OPF_REQUIRE(t && out_json, "null argument");
  *out_json = nullptr;
  return guarded([&] { *out_json = duplicate(t->summary.dump(2)); });
}

}  // extern "C"
