#pragma once

#include <string>
#include <string_view>

#include "opinionflow/dynamics.hpp"
#include "opinionflow/graph.hpp"
#include "opinionflow/types.hpp"

namespace opinionflow {

enum class ControlType { kNone, kConstant, kTarget, kTwoStage };

std::string_view control_type_name(ControlType t) noexcept;

struct ControlSpec {
  ControlType type = ControlType::kNone;
  Vector u;    // kConstant
  Vector x_d;  // kTarget, kTwoStage
  double t_bar = 1.0;
};

// One scenario file = one reproducible experiment:
//
//   {
//     "name": "...",                       (optional)
//     "approximate_topology": false,       (optional)
//     "graph": {"n": 2, "edges": [{"from": 1, "to": 2, "weight": 1.0}, ...]},
//     "x0": [...], "b": [...],
//     "control": {"type": "none" | "constant" | "target" | "two_stage",
//                 "u": [...], "x_d": [...], "t_bar": 1.0},   (optional)
//     "sim": {"t_end": 20, "dt": 0.05, "engine": "exact" | "rk4",
//             "rk4_step": 1e-3}                               (optional)
//   }
struct Scenario {
  std::string name;
  bool approximate_topology = false;
  Graph graph;
  Vector x0;
  Vector b;
  ControlSpec control;
  SimParams sim;

  int size() const noexcept { return graph.size(); }
};

/// Parses and validates a scenario document. Syntax errors raise
/// Error(kParse) with line and column; schema and graph problems raise
/// Error(kValidation).
Scenario parse_scenario(std::string_view json_text);

/// Error(kIo) when the file cannot be read, otherwise as parse_scenario.
Scenario load_scenario(const std::string& path);

}  // namespace opinionflow
