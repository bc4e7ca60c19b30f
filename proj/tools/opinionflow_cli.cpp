// opinionflow command-line front end. Talks to the library exclusively
// through the C interface.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opinionflow/opinionflow.h"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

int report_error(const std::string& code, const std::string& message, int exit_code) {
  std::cerr << "{\"error\": {\"code\": \"" << json_escape(code) << "\", \"message\": \"" << json_escape(message)
            << "\"}}" << std::endl;
  return exit_code;
}

int report_status(opf_status status) {
  return report_error(opf_status_name(status), opf_last_error(),
                      opf_status_is_input_error(status) ? kExitInput : kExitNumeric);
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { opf_string_free(p); }
};

struct ScenarioHandle {
  opf_scenario* p = nullptr;
  ~ScenarioHandle() { opf_scenario_free(p); }
};

struct TrajectoryHandle {
  opf_trajectory* p = nullptr;
  ~TrajectoryHandle() { opf_trajectory_free(p); }
};

// Writes to `path`, or stdout when path is empty.
bool emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::cout << text << '\n';
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  return static_cast<bool>(out);
}

std::optional<std::vector<double>> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

struct CommonFlags {
  std::string scenario;
  std::string out;
  double tol = 0.5;
  std::string engine;
  double t_bar = 0.0;
};

opf_run_options options_from(const CommonFlags& f) {
  opf_run_options o = opf_run_options_default();
  o.cluster_tol = f.tol;
  if (f.engine == "exact") o.engine = OPF_ENGINE_EXACT;
  if (f.engine == "rk4") o.engine = OPF_ENGINE_RK4;
  o.t_bar = f.t_bar;
  return o;
}

int cmd_analyze(const CommonFlags& f) {
  ScenarioHandle s;
  if (auto st = opf_scenario_load(f.scenario.c_str(), &s.p); st != OPF_OK) return report_status(st);
  const opf_run_options o = options_from(f);
  OwnedString report;
  if (auto st = opf_analyze(s.p, &o, &report.p); st != OPF_OK) return report_status(st);
  if (!emit(f.out, report.p)) return report_error("io", "cannot write '" + f.out + "'", kExitInput);
  return 0;
}

int cmd_simulate(const CommonFlags& f, const std::string& summary_path) {
  ScenarioHandle s;
  if (auto st = opf_scenario_load(f.scenario.c_str(), &s.p); st != OPF_OK) return report_status(st);
  const opf_run_options o = options_from(f);
  TrajectoryHandle t;
  if (auto st = opf_simulate(s.p, &o, &t.p); st != OPF_OK) return report_status(st);
  if (auto st = opf_trajectory_write_csv(t.p, f.out.c_str()); st != OPF_OK) return report_status(st);
  OwnedString summary;
  if (auto st = opf_trajectory_summary_json(t.p, &summary.p); st != OPF_OK) return report_status(st);
  if (!emit(summary_path, summary.p)) return report_error("io", "cannot write '" + summary_path + "'", kExitInput);
  return 0;
}

int cmd_design(const CommonFlags& f, const std::string& x_d_text, const std::string& verification_path) {
  ScenarioHandle s;
  if (auto st = opf_scenario_load(f.scenario.c_str(), &s.p); st != OPF_OK) return report_status(st);
  std::vector<double> x_d;
  if (!x_d_text.empty()) {
    auto parsed = parse_vector(x_d_text);
    if (!parsed) return report_error("validation", "--x-d must be a comma-separated list of numbers", kExitInput);
    x_d = *parsed;
  } else {
    x_d.resize(static_cast<std::size_t>(opf_scenario_node_count(s.p)));
    if (auto st = opf_scenario_target(s.p, x_d.data(), x_d.size()); st != OPF_OK)
      return report_error("validation", "no target given: pass --x-d or set control.x_d in the scenario",
                          kExitInput);
  }
  const opf_run_options o = options_from(f);
  OwnedString schedule, verification;
  if (auto st = opf_design(s.p, x_d.data(), x_d.size(), &o, &schedule.p, &verification.p); st != OPF_OK)
    return report_status(st);
  if (!emit(f.out, schedule.p)) return report_error("io", "cannot write '" + f.out + "'", kExitInput);
  if (!emit(verification_path, verification.p))
    return report_error("io", "cannot write '" + verification_path + "'", kExitInput);
  return 0;
}

int cmd_gen(std::uint64_t seed, int n, const std::string& out) {
  OwnedString text;
  if (auto st = opf_generate_scenario(seed, n, &text.p); st != OPF_OK) return report_status(st);
  if (!emit(out, text.p)) return report_error("io", "cannot write '" + out + "'", kExitInput);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biased Laplacian opinion dynamics: analysis, simulation and control synthesis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(opf_version()));

  CommonFlags flags;
  std::string summary_path, x_d_text, verification_path;
  std::uint64_t seed = 1;
  int gen_n = 6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", flags.scenario, "Scenario JSON file")->required();
    cmd->add_option("--tol", flags.tol, "Cluster tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--engine", flags.engine, "Integration engine")->check(CLI::IsMember({"exact", "rk4"}));
    cmd->add_option("--t-bar", flags.t_bar, "Switching time for two-stage control")->check(CLI::PositiveNumber);
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Stability, steady state and drift report");
  add_common(analyze);
  analyze->add_option("--out", flags.out, "Report file (default: stdout)");

  CLI::App* simulate = app.add_subcommand("simulate", "Simulate and write the trajectory as CSV");
  add_common(simulate);
  simulate->add_option("--out", flags.out, "Trajectory CSV file")->required();
  simulate->add_option("--summary", summary_path, "Summary JSON file (default: stdout)");

  CLI::App* design = app.add_subcommand("design", "Synthesize a control schedule reaching a target state");
  add_common(design);
  design->add_option("--x-d", x_d_text, "Target state, comma separated (default: control.x_d)");
  design->add_option("--out", flags.out, "Schedule JSON file (default: stdout)");
  design->add_option("--verification", verification_path, "Verification JSON file (default: stdout)");

  CLI::App* gen = app.add_subcommand("gen", "Generate a random scenario");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--n", gen_n, "Number of agents")->check(CLI::PositiveNumber);
  gen->add_option("--out", flags.out, "Scenario file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kExitInput);
  }

  if (analyze->parsed()) return cmd_analyze(flags);
  if (simulate->parsed()) return cmd_simulate(flags, summary_path);
  if (design->parsed()) return cmd_design(flags, x_d_text, verification_path);
  if (gen->parsed()) return cmd_gen(seed, gen_n, flags.out);
  return report_error("usage", "no command given", kExitInput);
}
