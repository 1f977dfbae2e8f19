// Copyright 2026 The spinmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// spinmap command-line front end.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinmap/config.hpp"
#include "spinmap/csv.hpp"
#include "spinmap/figures.hpp"
#include "spinmap/kernels.hpp"
#include "spinmap/protocols.hpp"
#include "spinmap/verification.hpp"

namespace fs = std::filesystem;
using namespace spinmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

constexpr const char* kColumnHelp = R"(CSV output: header row, '.' decimal separator, one row per grid point.
Complex quantities are split into *_re / *_im columns.

  run, scenario qst:
    t, f_re, f_im, f_abs, out_00, out_11, out_01_re, out_01_im,
    trace_distance_input[, fidelity]
  run, scenario distribute_single:
    t, f_re, f_im, f_abs, concurrence, concurrence_in, ratio[, concurrence_formula]
  run, scenario distribute_dual:
    t, f_re, f_im, f_abs, g_re, g_im, g_abs, concurrence, concurrence_in,
    ratio, c1, c2, concurrence_formula
  run, scenario two_qubit_transfer | storage:
    t, pair_amplitude_abs, concurrence, concurrence_in,
    trace_distance_input[, fidelity]
  run, scenario weak_pair:
    t, concurrence, population_a, population_b
  run, scenario four_qubit_weak:
    t, t_scaled, purity, c_a1b2, c_a2b1, c_a1a2, c_b1b2, c_a1b1, c_a2b2
    [, closed_form_distance]
  run, scenario closed_form_four_qubit:
    t, t_scaled, c_a1b2, c_a2b1, c_a1a2, c_b1b2, c_a1b1, c_a2b2, tau4, c4, tau3_max
  sweep: the swept axis (p, g, J, delta or h) followed by the scenario columns.
  figure 3: p, f_abs, ratio
  figure 5: family (0 = phi+, 1 = psi+), p, f_abs, ratio
  figure 7: window, t, t_scaled, c_a1b2, c_a2b1, c_a1a2, c_b1b2, c_a1b1, c_a2b2,
            tau4, c4, tau3_max, exclusive_flag

Output path: -o PATH, else the config 'output' key, else <name>.csv.
Relative paths resolve against $SPINMAP_OUTPUT_DIR when it is set.
'-o -' writes to stdout.

Exit codes: 0 success, 1 verification or diagnostics failure, 2 config error.)";

fs::path resolve_output(const std::string& flag, const std::string& from_config,
                        const std::string& fallback) {
  std::string chosen = !flag.empty() ? flag : !from_config.empty() ? from_config : fallback;
  fs::path p(chosen);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SPINMAP_OUTPUT_DIR"); dir && *dir) {
      p = fs::path(dir) / p;
    }
  }
  return p;
}

void emit(const fs::path& path, const ScenarioResult& result) {
  if (path == "-") {
    write_csv(std::cout, result);
    return;
  }
  write_csv_file(path, result);
  std::cerr << "wrote " << result.rows.size() << " rows to " << path.string() << "\n";
}

void print_diagnostics(const Diagnostics& d) {
  if (d.oracle_checked) {
    std::cerr << "oracle: max trace distance " << d.max_oracle_distance << "\n";
  }
  if (d.cptp_checked) {
    std::cerr << "cptp: min Choi eigenvalue " << d.min_choi_eigenvalue
              << ", max trace deviation " << d.max_trace_deviation << "\n";
  }
  if (d.closed_form_compared) {
    std::cerr << "closed form: max distance " << d.max_closed_form_distance << "\n";
  }
}

// Names the first failing diagnostic; empty when all pass.
std::string diagnostic_failure(const Diagnostics& d, double otol, double psdtol) {
  char buf[200];
  if (d.oracle_checked && !(d.max_oracle_distance <= otol)) {
    std::snprintf(buf, sizeof buf, "oracle_equivalence: trace distance %.3e > %.3e",
                  d.max_oracle_distance, otol);
    return buf;
  }
  if (d.cptp_checked && !(d.min_choi_eigenvalue >= -psdtol)) {
    std::snprintf(buf, sizeof buf, "choi_positivity: min eigenvalue %.3e < %.3e",
                  d.min_choi_eigenvalue, -psdtol);
    return buf;
  }
  if (d.cptp_checked && !(d.max_trace_deviation <= tol::kUnitarity)) {
    std::snprintf(buf, sizeof buf, "trace_preservation: deviation %.3e > %.3e",
                  d.max_trace_deviation, tol::kUnitarity);
    return buf;
  }
  return {};
}

struct Common {
  std::string output;
  std::optional<double> tolerance;
};

int finish(const ScenarioResult& result, const ScenarioSpec& spec, const fs::path& out) {
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  if (result.peak) {
    std::cerr << "peak " << result.peak->column << " = " << result.peak->value
              << " at t = " << result.peak->time
              << (result.peak->refined ? " (refined)" : "") << "\n";
  }
  print_diagnostics(result.diagnostics);
  emit(out, result);
  if (auto why = diagnostic_failure(result.diagnostics, spec.oracle_tolerance,
                                    spec.psd_tolerance);
      !why.empty()) {
    std::cerr << "FAILED " << why << "\n";
    return kExitFailed;
  }
  return kExitOk;
}

std::optional<RunConfig> load(const std::string& path, const Common& common) {
  try {
    RunConfig cfg = load_config(path);
    if (common.tolerance) {
      if (!(*common.tolerance > 0.0)) throw ConfigError("--tolerance must be positive");
      cfg.scenario.oracle_tolerance = *common.tolerance;
    }
    return cfg;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return std::nullopt;
  }
}

int cmd_run(const std::string& config_path, const Common& common) {
  auto cfg = load(config_path, common);
  if (!cfg) return kExitConfig;
  ScenarioResult result = run(cfg->scenario);
  std::string fallback = std::string(scenario_kind_name(cfg->scenario.kind)) + ".csv";
  return finish(result, cfg->scenario, resolve_output(common.output, cfg->output, fallback));
}

int cmd_sweep(const std::string& config_path, const std::string& axis_name,
              const std::vector<double>& values, const Common& common) {
  auto cfg = load(config_path, common);
  if (!cfg) return kExitConfig;
  SweepSpec sw;
  if (cfg->sweep) sw = *cfg->sweep;
  try {
    if (!axis_name.empty()) sw.axis = parse_sweep_axis(axis_name);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!values.empty()) sw.values = values;
  if (sw.values.empty()) {
    std::cerr << "config error: sweep needs values (config 'sweep' section or --values)\n";
    return kExitConfig;
  }
  auto parts = sweep(cfg->scenario, sw.axis, sw.values);
  ScenarioResult merged = merge(parts);
  std::string fallback = std::string(scenario_kind_name(cfg->scenario.kind)) + "_sweep_" +
                         std::string(sweep_axis_name(sw.axis)) + ".csv";
  return finish(merged, cfg->scenario, resolve_output(common.output, cfg->output, fallback));
}

int cmd_verify(const VerifyOptions& options) {
  std::cerr << "backend: " << kernels::backend_name(kernels::active_backend()) << "\n";
  auto checks = verify_invariants(options);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%-4s %-34s witness %.3e  threshold %.3e%s%s\n", c.passed ? "ok" : "FAIL",
                c.name.c_str(), c.witness, c.threshold, c.detail.empty() ? "" : "  ",
                c.detail.c_str());
    if (!c.passed) ++failed;
  }
  if (failed) {
    for (const auto& c : checks) {
      if (!c.passed) {
        std::fprintf(stderr, "FAILED invariant %s: witness %.6e exceeds %.6e\n",
                     c.name.c_str(), c.witness, c.threshold);
      }
    }
    return kExitFailed;
  }
  std::printf("all %zu checks passed\n", checks.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum maps induced by U(1) spin networks"};
  app.footer(kColumnHelp);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("-o,--output", common.output, "Output CSV path ('-' for stdout)");
  app.add_option("--tolerance", common.tolerance,
                 "Override the oracle-equivalence tolerance (trace distance)");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario from a YAML config");
  run_cmd->add_option("config", config_path, "Scenario config")->required();

  std::string sweep_config, axis_name;
  std::vector<double> sweep_values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a parameter axis");
  sweep_cmd->add_option("config", sweep_config, "Scenario config")->required();
  sweep_cmd->add_option("--axis", axis_name, "p | g | J | delta | h");
  sweep_cmd->add_option("--values", sweep_values, "Axis values")->delimiter(',');

  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a random network");
  verify_cmd->add_option("--sites", vopt.sites, "Network size")
      ->check(CLI::Range(3, 10));
  verify_cmd->add_option("--seed", vopt.seed, "RNG seed");
  verify_cmd->add_option("--samples", vopt.samples, "Draws per check")
      ->check(CLI::PositiveNumber);

  int figure_id = 0;
  RatioFigureOptions ratio_opt;
  Figure7Options f7;
  std::string bell_name;
  auto* figure_cmd = app.add_subcommand("figure", "Emit the data behind figure 3, 5 or 7");
  figure_cmd->add_option("id", figure_id, "3, 5 or 7")->required()->check(CLI::IsMember({3, 5, 7}));
  figure_cmd->add_option("--p-values", ratio_opt.p_values, "Werner weights (3, 5)")
      ->delimiter(',');
  figure_cmd->add_option("--f-points", ratio_opt.f_points, "Grid points in |f| (3, 5)")
      ->check(CLI::Range(2, 1000000));
  figure_cmd->add_option("--bell", bell_name, "Bell family for figure 3: phi+ psi+ phi- psi-");
  figure_cmd->add_option("--ratio", f7.ratio, "J^2/g^2 (7)")->check(CLI::PositiveNumber);
  figure_cmd->add_option("--J", f7.J, "Wire coupling (7)")->check(CLI::PositiveNumber);
  figure_cmd->add_option("--points", f7.points, "Points per window (7)")
      ->check(CLI::Range(2, 10000000));
  figure_cmd->add_option("--width", f7.width, "Window width in time units (7)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (const char* s = std::getenv("SPINMAP_SIMD"); s && *s) {
      std::cerr << "backend: " << kernels::backend_name(kernels::active_backend()) << "\n";
    }
    if (*run_cmd) return cmd_run(config_path, common);
    if (*sweep_cmd) return cmd_sweep(sweep_config, axis_name, sweep_values, common);
    if (*verify_cmd) {
      if (common.tolerance) vopt.oracle_tolerance = *common.tolerance;
      return cmd_verify(vopt);
    }
    if (*figure_cmd) {
      ScenarioResult result;
      if (figure_id == 3) {
        if (!bell_name.empty()) ratio_opt.bell = parse_bell_state(bell_name);
        result = figure3(ratio_opt);
      } else if (figure_id == 5) {
        result = figure5(ratio_opt);
      } else {
        result = figure7(f7);
      }
      emit(resolve_output(common.output, "", "figure" + std::to_string(figure_id) + ".csv"),
           result);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitOk;
}
