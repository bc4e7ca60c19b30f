#ifndef OPINIONFLOW_H
#define OPINIONFLOW_H

/*
 * C interface to the opinionflow library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an opf_status; on
 * failure the message is available from opf_last_error() on the same thread
 * until the next failing call. Strings returned through char** are allocated
 * by the library and released with opf_string_free.
 *
 * Node ids are 1-based. Matrices are row-major.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OPINIONFLOW_BUILDING)
#    define OPF_API __declspec(dllexport)
#  else
#    define OPF_API __declspec(dllimport)
#  endif
#else
#  define OPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum opf_status {
  OPF_OK = 0,
  OPF_ERR_INVALID_ARGUMENT = 1,
  OPF_ERR_VALIDATION = 2,
  OPF_ERR_PARSE = 3,
  OPF_ERR_IO = 4,
  OPF_ERR_DIMENSION_MISMATCH = 5,
  OPF_ERR_INVALID_HORIZON = 6,
  OPF_ERR_INCOMPLETE_ASSIGNMENT = 7,
  OPF_ERR_NOT_STABLE = 8,
  OPF_ERR_EIGENSOLVER = 9,
  OPF_ERR_DEGENERATE_NULL_SPACE = 10,
  OPF_ERR_SOLVER = 11,
  OPF_ERR_EXPM = 12,
  OPF_ERR_INTERNAL = 13
} opf_status;

typedef enum opf_engine {
  OPF_ENGINE_SCENARIO = 0, /* whatever the scenario file says */
  OPF_ENGINE_EXACT = 1,
  OPF_ENGINE_RK4 = 2
} opf_engine;

typedef struct opf_edge {
  int from;
  int to;
  double weight;
} opf_edge;

typedef struct opf_run_options {
  double cluster_tol;   /* default 0.5 */
  opf_engine engine;    /* default OPF_ENGINE_SCENARIO */
  double t_bar;         /* <= 0 keeps the scenario's value */
  double zero_tol;      /* default 1e-9 */
  double stability_tol; /* default 1e-8 */
} opf_run_options;

typedef struct opf_graph opf_graph;
typedef struct opf_scenario opf_scenario;
typedef struct opf_trajectory opf_trajectory;

OPF_API const char* opf_version(void);
OPF_API const char* opf_status_name(opf_status status);
/* 1 when the status stems from bad input (exit code 2 in the CLI), 0 for
   numerical failures. */
OPF_API int opf_status_is_input_error(opf_status status);
OPF_API const char* opf_last_error(void);
OPF_API void opf_string_free(char* s);
OPF_API opf_run_options opf_run_options_default(void);

/* Graphs */
OPF_API opf_status opf_graph_create(int n, const opf_edge* edges, size_t edge_count,
                                    opf_graph** out);
OPF_API void opf_graph_free(opf_graph* g);
OPF_API int opf_graph_node_count(const opf_graph* g);
/* Writes the n*n Laplacian row-major into out. */
OPF_API opf_status opf_graph_laplacian(const opf_graph* g, double* out, size_t out_len);
/* Connectivity report as JSON. */
OPF_API opf_status opf_graph_connectivity_json(const opf_graph* g, char** out_json);
/* Multiplicity of the zero eigenvalue of L. */
OPF_API opf_status opf_graph_zero_multiplicity(const opf_graph* g, double zero_tol, int* out);

/* Scenarios */
OPF_API opf_status opf_scenario_load(const char* path, opf_scenario** out);
OPF_API opf_status opf_scenario_parse(const char* json_text, opf_scenario** out);
OPF_API void opf_scenario_free(opf_scenario* s);
OPF_API int opf_scenario_node_count(const opf_scenario* s);
/* Reads the scenario's x_d (control section); OPF_ERR_VALIDATION if absent. */
OPF_API opf_status opf_scenario_target(const opf_scenario* s, double* out, size_t out_len);

/* Pipelines. options may be NULL for defaults. */
OPF_API opf_status opf_analyze(const opf_scenario* s, const opf_run_options* options,
                               char** out_report_json);
OPF_API opf_status opf_simulate(const opf_scenario* s, const opf_run_options* options,
                                opf_trajectory** out);
OPF_API opf_status opf_design(const opf_scenario* s, const double* x_d, size_t n,
                              const opf_run_options* options, char** out_schedule_json,
                              char** out_verification_json);
OPF_API opf_status opf_generate_scenario(uint64_t seed, int n, char** out_json);

/* Trajectories */
OPF_API void opf_trajectory_free(opf_trajectory* t);
OPF_API size_t opf_trajectory_sample_count(const opf_trajectory* t);
OPF_API int opf_trajectory_node_count(const opf_trajectory* t);
OPF_API double opf_trajectory_time(const opf_trajectory* t, size_t sample);
/* Copies the n-vector of sample `sample` into out. */
OPF_API opf_status opf_trajectory_state(const opf_trajectory* t, size_t sample, double* out,
                                        size_t out_len);
OPF_API opf_status opf_trajectory_write_csv(const opf_trajectory* t, const char* path);
OPF_API opf_status opf_trajectory_csv(const opf_trajectory* t, char** out_csv);
OPF_API opf_status opf_trajectory_summary_json(const opf_trajectory* t, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* OPINIONFLOW_H */
