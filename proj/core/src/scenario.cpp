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

#include "btverify/scenario.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include <spdlog/spdlog.h>

#include "btverify/errors.hpp"
#include "btverify/skills.hpp"
#include "btverify/toml.hpp"
#include "btverify/trace.hpp"
#include "btverify/value.hpp"

namespace btverify {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& rel) {
  std::filesystem::path p(rel);
  return p.is_absolute() ? p : base / p;
}

Injection parse_injection_table(const toml::Table& t, size_t index) {
  const std::string context = "injection #" + std::to_string(index + 1);
  Injection inj;
  const std::string action = toml::get_string(t, "action", context);
  if (action == "set_battery") {
    inj.action = Injection::Action::SetBattery;
    const toml::Value* level = toml::find(t, "level");
    if (level == nullptr) {
      throw ConfigError(context + ": set_battery requires 'level'");
    }
    inj.level = level->as_number();
  } else if (action == "skill_bug") {
    inj.action = Injection::Action::SkillBug;
    inj.skill = toml::get_string_or(t, "skill", "BatteryLevelAbove30");
    inj.threshold = toml::get_number_or(t, "threshold", 20.0);
  } else if (action == "plug_cable") {
    inj.action = Injection::Action::PlugCable;
  } else {
    throw ConfigError(context + ": unknown action '" + action + "'");
  }

  if (const toml::Value* v = toml::find(t, "at_tick")) {
    inj.at_tick = static_cast<int>(v->as_int());
  }
  if (const toml::Value* v = toml::find(t, "on_arrival")) {
    inj.on_arrival = v->as_string();
    inj.delay_ticks = static_cast<int>(toml::get_int_or(t, "delay_ticks", 0));
  }
  if (inj.at_tick.has_value() == inj.on_arrival.has_value()) {
    throw ConfigError(context + ": exactly one of at_tick / on_arrival is required");
  }
  return inj;
}

}  // namespace

std::string Injection::describe() const {
  std::string what;
  switch (action) {
    case Action::SetBattery:
      what = "set battery level to " + to_string(Scalar{level});
      break;
    case Action::SkillBug:
      what = "set skill '" + skill + "' threshold to " + to_string(Scalar{threshold});
      break;
    case Action::PlugCable:
      what = "plug charging cable";
      break;
  }
  if (at_tick.has_value()) {
    return what + " at tick " + std::to_string(*at_tick);
  }
  return what + " " + std::to_string(delay_ticks) + " ticks after arrival at " +
         *on_arrival;
}

Injection parse_injection_spec(const std::string& spec) {
  const auto fail = [&spec]() -> void {
    throw ConfigError(
        "bad --inject spec '" + spec +
        "'; expected skill-bug:battery30-threshold=<x>, set-battery:<level>@<tick>, "
        "plug-cable@<tick> or plug-cable@arrival:<location>+<delay>");
  };
  Injection inj;
  try {
    if (spec.rfind("skill-bug:battery30-threshold=", 0) == 0) {
      inj.action = Injection::Action::SkillBug;
      inj.skill = "BatteryLevelAbove30";
      inj.threshold = std::stod(spec.substr(spec.find('=') + 1));
      inj.at_tick = 1;
      return inj;
    }
    if (spec.rfind("set-battery:", 0) == 0) {
      const size_t at = spec.find('@');
      if (at == std::string::npos) fail();
      inj.action = Injection::Action::SetBattery;
      inj.level = std::stod(spec.substr(12, at - 12));
      inj.at_tick = std::stoi(spec.substr(at + 1));
      return inj;
    }
    if (spec.rfind("plug-cable@", 0) == 0) {
      inj.action = Injection::Action::PlugCable;
      const std::string rest = spec.substr(11);
      if (rest.rfind("arrival:", 0) == 0) {
        const size_t plus = rest.find('+');
        if (plus == std::string::npos) fail();
        inj.on_arrival = rest.substr(8, plus - 8);
        inj.delay_ticks = std::stoi(rest.substr(plus + 1));
      } else {
        inj.at_tick = std::stoi(rest);
      }
      return inj;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail();
  }
  fail();
  return inj;  // unreachable
}

ScenarioConfig load_scenario_config(const std::filesystem::path& file) {
  const toml::Table t = toml::parse_file(file);
  const std::filesystem::path base = file.parent_path();

  ScenarioConfig cfg;
  cfg.name = toml::get_string_or(t, "name", file.stem().string());
  cfg.map_file = resolve(base, toml::get_string(t, "map", "scenario config"));
  cfg.locations_file =
      resolve(base, toml::get_string(t, "map_locations", "scenario config"));
  cfg.bt_file = resolve(base, toml::get_string(t, "bt", "scenario config"));
  cfg.skills_file = resolve(base, toml::get_string(t, "skills", "scenario config"));
  if (const toml::Value* monitors = toml::find(t, "monitors")) {
    for (const auto& m : monitors->as_array()) {
      cfg.monitor_files.push_back(resolve(base, m.as_string()));
    }
  }
  cfg.frequency_hz = toml::get_number_or(t, "frequency_hz", 10.0);
  cfg.max_ticks = static_cast<int>(toml::get_int_or(t, "max_ticks", 1000));
  cfg.stop_on_root_success = toml::get_bool_or(t, "stop_on_root_success", false);
  cfg.stop_on_violation = toml::get_bool_or(t, "stop_on_violation", false);
  cfg.deterministic = toml::get_bool_or(t, "deterministic", true);
  cfg.seed = static_cast<unsigned>(toml::get_int_or(t, "seed", 1));
  if (cfg.frequency_hz <= 0.0) {
    throw ConfigError("scenario config: frequency_hz must be positive");
  }
  if (cfg.max_ticks <= 0) {
    throw ConfigError("scenario config: max_ticks must be positive");
  }

  if (const toml::Value* sim = toml::find(t, "sim")) {
    const toml::Table& s = sim->as_table();
    cfg.world.speed = toml::get_number_or(s, "speed", cfg.world.speed);
    cfg.world.drain_rate = toml::get_number_or(s, "drain_rate", cfg.world.drain_rate);
    cfg.world.charge_rate =
        toml::get_number_or(s, "charge_rate", cfg.world.charge_rate);
    cfg.world.initial_battery =
        toml::get_number_or(s, "initial_battery", cfg.world.initial_battery);
    cfg.world.goal_tolerance =
        toml::get_number_or(s, "goal_tolerance", cfg.world.goal_tolerance);
    cfg.world.inflate_radius = static_cast<int>(
        toml::get_int_or(s, "inflate_radius", cfg.world.inflate_radius));
    cfg.world.start_location =
        toml::get_string_or(s, "start", cfg.world.start_location);
  }

  if (const toml::Value* injections = toml::find(t, "injections")) {
    size_t index = 0;
    for (const auto& entry : injections->as_array()) {
      cfg.injections.push_back(parse_injection_table(entry.as_table(), index++));
    }
  }

  for (const auto& path :
       {cfg.map_file, cfg.locations_file, cfg.bt_file, cfg.skills_file}) {
    if (!std::filesystem::exists(path)) {
      throw ConfigError("scenario config references missing file: " + path.string());
    }
  }
  for (const auto& path : cfg.monitor_files) {
    if (!std::filesystem::exists(path)) {
      throw ConfigError("scenario config references missing file: " + path.string());
    }
  }
  return cfg;
}

namespace {

/// Everything a live scenario needs, wired over one bus.
struct Wiring {
  GridMap map;
  std::unique_ptr<World> world;
  Bus bus;
  std::unique_ptr<SkillHost> host;
  BTNode tree;
  std::unique_ptr<BusLeafExecutor> executor;
  std::vector<std::unique_ptr<MonitorInstance>> monitors;

  explicit Wiring(const ScenarioConfig& cfg)
      : map(load_map(cfg.map_file, cfg.locations_file)) {
    world = std::make_unique<World>(map, cfg.world);
    register_service_endpoints(bus, *world, kInjectorClient);
    host = std::make_unique<SkillHost>(
        bus,
        [this](const std::string& name) -> std::optional<Pose> {
          const Pose* p = map.find_location(name);
          return p == nullptr ? std::nullopt : std::optional<Pose>(*p);
        },
        kInjectorClient);
    for (SkillDef& def : load_skills_manifest(cfg.skills_file)) {
      host->add_skill(std::move(def));
    }
    tree = parse_bt_xml(read_file(cfg.bt_file));
    executor = std::make_unique<BusLeafExecutor>(bus);
    for (const auto& monitor_file : cfg.monitor_files) {
      monitors.push_back(std::make_unique<MonitorInstance>(load_monitor(monitor_file)));
    }
  }
};

void apply_injection(const Injection& inj, Bus& bus) {
  switch (inj.action) {
    case Injection::Action::SetBattery:
      bus.query(kInjectorClient, "battery", "set_level", {{"level", inj.level}});
      break;
    case Injection::Action::SkillBug:
      bus.query(kInjectorClient, inj.skill, "set_variable",
                {{"name", std::string("threshold")}, {"value", inj.threshold}});
      break;
    case Injection::Action::PlugCable:
      bus.query(kInjectorClient, "battery", "plug_cable", {});
      break;
  }
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config,
                       const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  Wiring w(config);

  RunReport report;
  report.scenario = config.name;
  report.trace_path = out_dir / (config.name + ".trace.jsonl");
  report.verdicts_path = out_dir / (config.name + ".verdicts.jsonl");
  report.report_path = out_dir / (config.name + ".report.txt");

  TraceWriter trace(report.trace_path);
  w.bus.attach_tap([&trace](const Message& m) { trace.write(m); });

  for (auto& monitor : w.monitors) {
    for (const ConnectionId& connection : monitor->spec().hooked_connections()) {
      MonitorInstance* inst = monitor.get();
      w.bus.attach_portmonitor(connection, [inst, &report](const Message& m) {
        if (auto verdict = inst->feed(m); verdict.has_value()) {
          report.verdicts.push_back(std::move(*verdict));
        }
      });
    }
  }

  TickEngine engine(w.tree, *w.executor);
  SteadyClock wall_clock;
  const std::chrono::duration<double> period(1.0 / config.frequency_hz);

  // Arrival-triggered injections: armed when the robot first arrives, fired
  // delay_ticks later (before that tick's cycle).
  struct PendingArrival {
    const Injection* injection;
    bool armed = false;
    int fire_tick = 0;
    bool fired = false;
  };
  std::vector<PendingArrival> arrivals;
  for (const Injection& inj : config.injections) {
    if (inj.on_arrival.has_value()) {
      arrivals.push_back({&inj});
    }
  }

  report.world_series.push_back(w.world->snapshot());
  spdlog::info("scenario '{}': starting run, max {} ticks", config.name,
               config.max_ticks);

  for (int tick = 1; tick <= config.max_ticks; ++tick) {
    w.bus.set_time(static_cast<double>(tick));

    for (const Injection& inj : config.injections) {
      if (inj.at_tick.has_value() && *inj.at_tick == tick) {
        spdlog::info("tick {}: injecting: {}", tick, inj.describe());
        apply_injection(inj, w.bus);
      }
    }
    for (PendingArrival& pending : arrivals) {
      if (pending.armed && !pending.fired && pending.fire_tick == tick) {
        spdlog::info("tick {}: injecting: {}", tick, pending.injection->describe());
        apply_injection(*pending.injection, w.bus);
        pending.fired = true;
      }
    }

    const TickStatus status = engine.tick_once();
    engine.clear_trace();  // the bus trace is the record; keep memory flat
    w.world->step();

    // Scenario telemetry: the runner polls the pose once per tick so traces
    // carry the robot path.
    w.bus.query("runner", "localization", "getCurrentPosition");

    for (PendingArrival& pending : arrivals) {
      if (!pending.armed && w.world->at_location(*pending.injection->on_arrival)) {
        pending.armed = true;
        pending.fire_tick = tick + pending.injection->delay_ticks;
      }
    }

    report.world_series.push_back(w.world->snapshot());
    report.ticks = tick;
    report.last_root_status = status;

    if (config.stop_on_violation && !report.verdicts.empty()) {
      spdlog::info("tick {}: stopping on violation", tick);
      break;
    }
    if (config.stop_on_root_success && status == TickStatus::Success) {
      spdlog::info("tick {}: stopping on root success", tick);
      break;
    }
    if (!config.deterministic) {
      wall_clock.sleep(period);
    }
  }

  for (const auto& monitor : w.monitors) {
    report.monitor_history[monitor->spec().name] = monitor->history();
  }

  trace.flush();
  {
    std::ofstream verdicts_out(report.verdicts_path);
    for (const Verdict& v : report.verdicts) {
      verdicts_out << verdict_to_json(v) << '\n';
    }
  }
  {
    std::ofstream report_out(report.report_path);
    report_out << report.summary();
  }
  return report;
}

std::string RunReport::summary() const {
  std::ostringstream out;
  out << "scenario:    " << scenario << '\n';
  out << "ticks:       " << ticks << '\n';
  out << "root status: " << to_string(last_root_status) << '\n';
  out << "violations:  " << verdicts.size() << '\n';
  for (const Verdict& v : verdicts) {
    out << "  - monitor " << v.monitor << " entered '" << v.state << "' at seq "
        << v.seq << " (t=" << v.t << ", " << v.witness.connection.str() << " "
        << v.witness.procedure << ")\n";
  }
  if (!world_series.empty()) {
    const World::Snapshot& last = world_series.back();
    out << "final state: pose (" << last.x << ", " << last.y << "), battery "
        << last.level << "%, nav " << to_string(last.nav_status) << '\n';
  }
  out << "trace:       " << trace_path.string() << '\n';
  out << "verdicts:    " << verdicts_path.string() << '\n';
  return out.str();
}

std::string describe_scenario(const ScenarioConfig& config) {
  Wiring w(config);
  std::ostringstream out;
  out << "scenario '" << config.name << "'\n";
  out << "map: " << w.map.width() << "x" << w.map.height() << ", locations:";
  for (const auto& [name, pose] : w.map.named_locations()) {
    out << " " << name;
  }
  out << '\n';
  out << "service endpoints: battery localization navigation\n";

  const auto ids = w.host->skill_ids();
  out << "skills (" << ids.size() << "):\n";
  for (const auto& id : ids) {
    const SkillDef& def = w.host->definition(id);
    out << "  " << id << "  "
        << (def.kind == SkillDef::Kind::Condition ? "condition" : "action");
    if (!def.endpoint.empty()) {
      out << " -> " << def.endpoint;
    }
    out << '\n';
  }

  out << "connections:\n";
  for (const auto& id : ids) {
    out << "  bt->" << id << '\n';
    const SkillDef& def = w.host->definition(id);
    if (!def.endpoint.empty()) {
      out << "  " << id << "->" << def.endpoint << '\n';
    }
  }

  out << "monitors (" << w.monitors.size() << "):\n";
  for (const auto& monitor : w.monitors) {
    out << "  " << monitor->spec().name << "  hooks:";
    for (const ConnectionId& c : monitor->spec().hooked_connections()) {
      out << " " << c.str();
    }
    out << '\n';
  }

  out << "injections (" << config.injections.size() << "):\n";
  for (const Injection& inj : config.injections) {
    out << "  " << inj.describe() << '\n';
  }
  out << "stop: max " << config.max_ticks << " ticks";
  if (config.stop_on_root_success) out << ", on root success";
  if (config.stop_on_violation) out << ", on violation";
  out << '\n';
  return out.str();
}

}  // namespace btverify
