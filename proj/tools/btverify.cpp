// Copyright 2026 The btverify Authors
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

// btverify: run scenarios, replay traces against monitors, validate
// fixture files and plot traces.
//
// Exit codes: 0 no violation, 1 configuration/wiring/parse error,
// 2 at least one monitor violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btverify/behavior_tree.hpp"
#include "btverify/errors.hpp"
#include "btverify/grid_map.hpp"
#include "btverify/log.hpp"
#include "btverify/monitor.hpp"
#include "btverify/plot.hpp"
#include "btverify/scenario.hpp"
#include "btverify/statechart.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw btverify::ConfigError("cannot open file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& injects,
            const std::string& log_dir, bool deterministic, int ticks) {
  btverify::ScenarioConfig config =
      btverify::load_scenario_config(std::filesystem::path(config_path));
  for (const std::string& spec : injects) {
    config.injections.push_back(btverify::parse_injection_spec(spec));
  }
  if (deterministic) {
    config.deterministic = true;
  }
  if (ticks > 0) {
    config.max_ticks = ticks;
  }
  const btverify::RunReport report = btverify::run_scenario(config, log_dir);
  std::cout << report.summary();
  return report.violated() ? kExitViolation : kExitOk;
}

int cmd_check(const std::string& trace_path, const std::string& monitor_path) {
  const btverify::MonitorSpec spec =
      btverify::load_monitor(std::filesystem::path(monitor_path));
  const std::vector<btverify::Verdict> verdicts =
      btverify::check_trace_file(std::filesystem::path(trace_path), spec);
  for (const btverify::Verdict& v : verdicts) {
    std::cout << btverify::verdict_to_json(v) << '\n';
  }
  std::cout << "monitor " << spec.name << ": " << verdicts.size() << " violation"
            << (verdicts.size() == 1 ? "" : "s") << '\n';
  return verdicts.empty() ? kExitOk : kExitViolation;
}

int cmd_validate(const std::string& bt_path, const std::string& scxml_path,
                 const std::string& map_path) {
  if (!bt_path.empty()) {
    const btverify::BTNode root = btverify::parse_bt_xml(read_file(bt_path));
    btverify::validate_bt(root);
    std::cout << "OK: behavior tree " << bt_path << '\n';
  }
  if (!scxml_path.empty()) {
    const btverify::StateChart chart = btverify::parse_scxml(read_file(scxml_path));
    std::cout << "OK: state chart " << scxml_path << " (" << chart.states.size()
              << " states, " << chart.transitions.size() << " transitions)\n";
  }
  if (!map_path.empty()) {
    std::filesystem::path ascii(map_path);
    std::filesystem::path sidecar = ascii;
    sidecar.replace_extension(".locations.json");
    if (std::filesystem::exists(sidecar)) {
      const btverify::GridMap map = btverify::load_map(ascii, sidecar);
      std::cout << "OK: map " << map_path << " (" << map.width() << "x"
                << map.height() << ", " << map.named_locations().size()
                << " locations)\n";
    } else {
      const btverify::GridMap map = btverify::GridMap::parse_ascii(read_file(ascii));
      if (!map.border_closed()) {
        throw btverify::ParseError("map border is not obstacle-closed: " + map_path);
      }
      std::cout << "OK: map " << map_path << " (" << map.width() << "x"
                << map.height() << ", no sidecar)\n";
    }
  }
  return kExitOk;
}

int cmd_plot(const std::string& trace_path, const std::string& out_path) {
  btverify::write_trace_svg(trace_path, out_path);
  std::cout << "wrote " << out_path << '\n';
  return kExitOk;
}

int cmd_describe(const std::string& config_path) {
  const btverify::ScenarioConfig config =
      btverify::load_scenario_config(std::filesystem::path(config_path));
  std::cout << btverify::describe_scenario(config);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  btverify::init_logging_from_env();

  CLI::App app{"behavior tree + state chart runtime verification toolkit"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_log_dir = "btverify-logs";
  std::vector<std::string> run_injects;
  bool run_deterministic = false;
  int run_ticks = 0;
  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("--config", run_config, "scenario TOML config")->required();
  run->add_option("--inject", run_injects,
                  "extra fault injection (skill-bug:battery30-threshold=20, "
                  "set-battery:<level>@<tick>, plug-cable@<tick>)");
  run->add_option("--log-dir", run_log_dir, "output directory for trace/verdicts");
  run->add_flag("--deterministic", run_deterministic,
                "force deterministic lockstep mode");
  run->add_option("--ticks", run_ticks, "override max tick count");

  // check
  std::string check_trace, check_monitor;
  CLI::App* check = app.add_subcommand("check", "replay a trace against a monitor");
  check->add_option("--trace", check_trace, "trace JSONL file")->required();
  check->add_option("--monitor", check_monitor, "monitor manifest JSON")->required();

  // validate
  std::string val_bt, val_scxml, val_map;
  CLI::App* validate = app.add_subcommand("validate", "validate fixture files");
  validate->add_option("--bt", val_bt, "behavior tree XML");
  validate->add_option("--scxml", val_scxml, "state chart SCXML");
  validate->add_option("--map", val_map, "ASCII map file");

  // plot
  std::string plot_trace, plot_out;
  CLI::App* plot = app.add_subcommand("plot", "render a trace as SVG");
  plot->add_option("--trace", plot_trace, "trace JSONL file")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();

  // describe
  std::string describe_config;
  CLI::App* describe = app.add_subcommand("describe", "print scenario wiring");
  describe->add_option("--config", describe_config, "scenario TOML config")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(run_config, run_injects, run_log_dir, run_deterministic,
                     run_ticks);
    }
    if (check->parsed()) {
      return cmd_check(check_trace, check_monitor);
    }
    if (validate->parsed()) {
      if (val_bt.empty() && val_scxml.empty() && val_map.empty()) {
        std::cerr << "validate: provide at least one of --bt / --scxml / --map\n";
        return kExitError;
      }
      return cmd_validate(val_bt, val_scxml, val_map);
    }
    if (plot->parsed()) {
      return cmd_plot(plot_trace, plot_out);
    }
    if (describe->parsed()) {
      return cmd_describe(describe_config);
    }
  } catch (const btverify::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
