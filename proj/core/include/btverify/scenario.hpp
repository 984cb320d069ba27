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

#ifndef BTVERIFY_SCENARIO_HPP_
#define BTVERIFY_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "btverify/behavior_tree.hpp"
#include "btverify/monitor.hpp"
#include "btverify/world.hpp"

namespace btverify {

inline constexpr const char* kInjectorClient = "injector";

/// A scheduled fault injection. Triggered either at a fixed tick (applied
/// before that tick's cycle) or a fixed delay after the robot first
/// arrives at a named location.
struct Injection {
  enum class Action { SetBattery, SkillBug, PlugCable };

  Action action = Action::SetBattery;
  std::optional<int> at_tick;
  std::optional<std::string> on_arrival;
  int delay_ticks = 0;

  double level = 0.0;                         // SetBattery
  std::string skill = "BatteryLevelAbove30";  // SkillBug
  double threshold = 20.0;                    // SkillBug

  std::string describe() const;
};

/// Parses the --inject CLI grammar:
///   skill-bug:battery30-threshold=<x>
///   set-battery:<level>@<tick>
///   plug-cable@<tick> | plug-cable@arrival:<location>+<delay>
Injection parse_injection_spec(const std::string& spec);

struct ScenarioConfig {
  std::string name = "scenario";
  std::filesystem::path map_file;
  std::filesystem::path locations_file;
  std::filesystem::path bt_file;
  std::filesystem::path skills_file;
  std::vector<std::filesystem::path> monitor_files;

  double frequency_hz = 10.0;
  int max_ticks = 1000;
  bool stop_on_root_success = false;
  bool stop_on_violation = false;
  bool deterministic = true;  // lockstep, no wall-clock pacing
  unsigned seed = 1;          // reserved for randomized worlds

  WorldConfig world;
  std::vector<Injection> injections;
};

/// Loads a TOML scenario config; relative paths resolve against the config
/// file's directory.
ScenarioConfig load_scenario_config(const std::filesystem::path& file);

struct RunReport {
  std::string scenario;
  int ticks = 0;
  TickStatus last_root_status = TickStatus::Running;
  std::vector<Verdict> verdicts;
  std::vector<World::Snapshot> world_series;  // one snapshot per tick
  std::map<std::string, std::vector<MonitorTransition>> monitor_history;
  std::filesystem::path trace_path;
  std::filesystem::path verdicts_path;
  std::filesystem::path report_path;

  bool violated() const { return !verdicts.empty(); }
  std::string summary() const;
};

/// Runs the scenario to completion: wires sim + skills + behavior tree +
/// monitors over one bus, applies injections at their triggers, writes the
/// trace/verdicts/report files into out_dir, and returns the report.
/// Wiring errors surface before the first tick.
RunReport run_scenario(const ScenarioConfig& config,
                       const std::filesystem::path& out_dir);

/// Human-readable wiring summary (endpoints, skills, hooked monitors)
/// without running anything.
std::string describe_scenario(const ScenarioConfig& config);

}  // namespace btverify

#endif  // BTVERIFY_SCENARIO_HPP_
