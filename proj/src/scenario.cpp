#include "opinionflow/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "opinionflow/error.hpp"

namespace opinionflow {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::kValidation, msg); }

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where + ": missing \"" + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(where + ": expected a finite number");
  return d;
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) invalid(where + ": expected an integer");
  return v.get<int>();
}

Vector as_vector(const json& v, int n, const std::string& where) {
  if (!v.is_array()) invalid(where + ": expected an array of numbers");
  if (static_cast<int>(v.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch,
                where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  Vector out(n);
  for (int i = 0; i < n; ++i) out(i) = as_number(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

Graph parse_graph(const json& g) {
  if (!g.is_object()) invalid("graph: expected an object");
  const int n = as_int(require(g, "n", "graph"), "graph.n");
  const json& edges = require(g, "edges", "graph");
  if (!edges.is_array()) invalid("graph.edges: expected an array");
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "graph.edges[" + std::to_string(k) + "]";
    const json& e = edges[k];
    if (!e.is_object()) invalid(where + ": expected an object");
    out.push_back({as_int(require(e, "from", where), where + ".from"), as_int(require(e, "to", where), where + ".to"),
                   as_number(require(e, "weight", where), where + ".weight")});
  }
  return Graph::build(n, std::move(out));
}

ControlSpec parse_control(const json& c, int n) {
  ControlSpec spec;
  if (!c.is_object()) invalid("control: expected an object");
  const json& type = require(c, "type", "control");
  if (!type.is_string()) invalid("control.type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "none") {
    spec.type = ControlType::kNone;
  } else if (t == "constant") {
    spec.type = ControlType::kConstant;
    spec.u = as_vector(require(c, "u", "control"), n, "control.u");
  } else if (t == "target") {
    spec.type = ControlType::kTarget;
    spec.x_d = as_vector(require(c, "x_d", "control"), n, "control.x_d");
  } else if (t == "two_stage") {
    spec.type = ControlType::kTwoStage;
    spec.x_d = as_vector(require(c, "x_d", "control"), n, "control.x_d");
  } else {
    invalid("control.type: unknown control type \"" + t + "\"");
  }
  if (auto it = c.find("t_bar"); it != c.end()) {
    spec.t_bar = as_number(*it, "control.t_bar");
    if (spec.t_bar <= 0.0) throw Error(ErrorCode::kInvalidHorizon, "control.t_bar must be positive");
  }
  return spec;
}

SimParams parse_sim(const json& s) {
  SimParams p;
  if (!s.is_object()) invalid("sim: expected an object");
  if (auto it = s.find("t_end"); it != s.end()) p.t_end = as_number(*it, "sim.t_end");
  if (auto it = s.find("dt"); it != s.end()) p.dt = as_number(*it, "sim.dt");
  if (auto it = s.find("rk4_step"); it != s.end()) {
    p.rk4_step = as_number(*it, "sim.rk4_step");
  } else {
    p.rk4_step = std::min(p.rk4_step, p.dt);
  }
  if (auto it = s.find("engine"); it != s.end()) {
    if (!it->is_string()) invalid("sim.engine: expected a string");
    const std::string e = it->get<std::string>();
    if (e == "exact") {
      p.engine = Engine::kExact;
    } else if (e == "rk4") {
      p.engine = Engine::kRk4;
    } else {
      invalid("sim.engine: expected \"exact\" or \"rk4\", got \"" + e + "\"");
    }
  }
  p.validate();
  return p;
}

std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string_view control_type_name(ControlType t) noexcept {
  switch (t) {
    case ControlType::kNone: return "none";
    case ControlType::kConstant: return "constant";
    case ControlType::kTarget: return "target";
    case ControlType::kTwoStage: return "two_stage";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, "malformed JSON at " + position(json_text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) invalid("scenario: expected a JSON object");

  Graph graph = parse_graph(require(doc, "graph", "scenario"));
  const int n = graph.size();
  Vector x0 = as_vector(require(doc, "x0", "scenario"), n, "x0");
  Vector b = doc.contains("b") ? as_vector(doc["b"], n, "b") : Vector(Vector::Zero(n));
  ControlSpec control = doc.contains("control") ? parse_control(doc["control"], n) : ControlSpec{};
  SimParams sim = doc.contains("sim") ? parse_sim(doc["sim"]) : SimParams{};

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) invalid("name: expected a string");
    name = it->get<std::string>();
  }
  bool approximate = false;
  if (auto it = doc.find("approximate_topology"); it != doc.end()) {
    if (!it->is_boolean()) invalid("approximate_topology: expected a boolean");
    approximate = it->get<bool>();
  }
  return Scenario{std::move(name), approximate, std::move(graph), std::move(x0),
                  std::move(b),    std::move(control), sim};
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading scenario file '" + path + "'");
  return parse_scenario(buf.str());
}

}  // namespace opinionflow
