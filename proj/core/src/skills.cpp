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

#include "btverify/skills.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "btverify/errors.hpp"

namespace btverify {

namespace {

using json = nlohmann::json;

Scalar scalar_from_json(const json& j, const std::string& context) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ParseError(context + ": values must be boolean, number or string");
}

Payload payload_from_json(const json& j, const std::string& context) {
  Payload out;
  for (const auto& [key, value] : j.items()) {
    out[key] = scalar_from_json(value, context);
  }
  return out;
}

SkillBinding binding_from_json(const json& j, const std::string& context) {
  SkillBinding b;
  b.procedure = j.at("procedure").get<std::string>();
  if (j.contains("args")) {
    b.args = payload_from_json(j["args"], context + ".args");
  }
  if (j.contains("args_from_params")) {
    for (const auto& [field, param] : j["args_from_params"].items()) {
      b.args_from_params[field] = param.get<std::string>();
    }
  }
  b.reply_event = j.value("reply_event", std::string("reply"));
  if (j.contains("distance_to_param")) {
    b.distance_to_param = j["distance_to_param"].get<std::string>();
  }
  return b;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<SkillDef> load_skills_manifest(const std::filesystem::path& manifest) {
  json j;
  {
    std::ifstream in(manifest);
    if (!in) {
      throw ConfigError("cannot open skills manifest: " + manifest.string());
    }
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ParseError("skills manifest " + manifest.string() + ": " + e.what());
    }
  }
  if (!j.contains("skills") || !j["skills"].is_array()) {
    throw ParseError("skills manifest " + manifest.string() +
                     ": missing 'skills' array");
  }

  const std::filesystem::path base = manifest.parent_path();
  std::vector<SkillDef> out;
  std::set<std::string> ids;
  for (const auto& entry : j["skills"]) {
    SkillDef def;
    def.id = entry.at("id").get<std::string>();
    if (def.id.empty() || !ids.insert(def.id).second) {
      throw ParseError("skills manifest: duplicate or empty skill id '" + def.id + "'");
    }
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "condition") {
      def.kind = SkillDef::Kind::Condition;
    } else if (kind == "action") {
      def.kind = SkillDef::Kind::Action;
    } else {
      throw ParseError("skill '" + def.id + "': bad kind '" + kind + "'");
    }
    def.endpoint = entry.value("endpoint", std::string());
    const auto chart_path = base / entry.at("chart").get<std::string>();
    def.chart = parse_scxml(read_file(chart_path));
    if (entry.contains("bindings")) {
      for (const auto& [state, binding] : entry["bindings"].items()) {
        if (!def.chart.has_state(state)) {
          throw ParseError("skill '" + def.id + "': binding for unknown state '" +
                           state + "'");
        }
        def.bindings[state] =
            binding_from_json(binding, "skill '" + def.id + "' binding " + state);
      }
    }
    if (entry.contains("halt")) {
      def.halt_binding = binding_from_json(entry["halt"], "skill '" + def.id + "' halt");
    }
    for (const auto& s : entry.value("success_states", std::vector<std::string>{})) {
      if (!def.chart.has_state(s)) {
        throw ParseError("skill '" + def.id + "': unknown success state '" + s + "'");
      }
      def.success_states.insert(s);
    }
    for (const auto& s : entry.value("failure_states", std::vector<std::string>{})) {
      if (!def.chart.has_state(s)) {
        throw ParseError("skill '" + def.id + "': unknown failure state '" + s + "'");
      }
      def.failure_states.insert(s);
    }
    if (entry.contains("params")) {
      def.params = payload_from_json(entry["params"], "skill '" + def.id + "' params");
    }
    if (entry.contains("variables")) {
      def.variables =
          payload_from_json(entry["variables"], "skill '" + def.id + "' variables");
    }
    if ((!def.bindings.empty() || def.halt_binding.has_value()) && def.endpoint.empty()) {
      throw ParseError("skill '" + def.id + "' has bindings but no endpoint");
    }
    out.push_back(std::move(def));
  }
  return out;
}

SkillHost::SkillHost(Bus& bus, LocationLookup locations, std::string injector_client)
    : bus_(&bus),
      locations_(std::move(locations)),
      injector_client_(std::move(injector_client)) {}

SkillHost::~SkillHost() {
  for (const auto& [id, hosted] : skills_) {
    try {
      bus_->unregister_endpoint(id);
    } catch (const Error&) {
      // already gone; nothing to release
    }
  }
}

void SkillHost::add_skill(SkillDef def) {
  const std::string id = def.id;
  auto hosted = std::make_unique<Hosted>();
  hosted->def = std::move(def);
  hosted->instance = std::make_unique<ChartInstance>(hosted->def.chart);
  for (const auto& [name, value] : hosted->def.variables) {
    hosted->instance->set_variable(name, value);
  }
  Hosted* raw = hosted.get();
  if (!skills_.emplace(id, std::move(hosted)).second) {
    throw ProtocolError("skill '" + id + "' already hosted");
  }

  bus_->register_endpoint(
      id, [this, raw](const QueryContext& ctx, const Payload& args) -> Payload {
        std::lock_guard lock(raw->mutex);
        if (ctx.procedure == "tick") {
          const TickStatus status = handle_tick(*raw);
          return {{"status", std::string(to_string(status))}};
        }
        if (ctx.procedure == "halt") {
          handle_halt(*raw);
          return {};
        }
        if (ctx.procedure == "set_variable") {
          if (ctx.client != injector_client_) {
            throw ProtocolError(
                "set_variable is reachable only from the fault-injection channel");
          }
          auto name_it = args.find("name");
          auto value_it = args.find("value");
          if (name_it == args.end() || !is_string(name_it->second) ||
              value_it == args.end()) {
            throw ProtocolError("set_variable requires 'name' and 'value' arguments");
          }
          raw->instance->set_variable(std::get<std::string>(name_it->second),
                                      value_it->second);
          return {};
        }
        throw ProtocolError("skill '" + raw->def.id + "': unknown procedure '" +
                            ctx.procedure + "'");
      });
}

Payload SkillHost::run_binding(Hosted& skill, const SkillBinding& binding) {
  Payload args = binding.args;
  for (const auto& [field, param] : binding.args_from_params) {
    auto it = skill.def.params.find(param);
    if (it == skill.def.params.end()) {
      throw ProtocolError("skill '" + skill.def.id + "': missing param '" + param + "'");
    }
    args[field] = it->second;
  }
  Payload reply = bus_->query(skill.def.id, skill.def.endpoint, binding.procedure, args);
  if (binding.distance_to_param.has_value()) {
    auto param_it = skill.def.params.find(*binding.distance_to_param);
    if (param_it == skill.def.params.end() || !is_string(param_it->second)) {
      throw ProtocolError("skill '" + skill.def.id + "': missing location param '" +
                          *binding.distance_to_param + "'");
    }
    const std::string& loc_name = std::get<std::string>(param_it->second);
    const std::optional<Pose> loc = locations_(loc_name);
    if (!loc.has_value()) {
      throw ProtocolError("skill '" + skill.def.id + "': unknown location '" +
                          loc_name + "'");
    }
    auto x_it = reply.find("x");
    auto y_it = reply.find("y");
    if (x_it == reply.end() || y_it == reply.end() || !is_number(x_it->second) ||
        !is_number(y_it->second)) {
      throw ProtocolError("skill '" + skill.def.id +
                          "': reply lacks x/y fields for distance computation");
    }
    reply["distance"] = std::hypot(std::get<double>(x_it->second) - loc->x,
                                   std::get<double>(y_it->second) - loc->y);
  }
  return reply;
}

TickStatus SkillHost::map_state(const Hosted& skill) const {
  const std::string& state = skill.instance->state();
  if (skill.def.success_states.count(state)) return TickStatus::Success;
  if (skill.def.failure_states.count(state)) return TickStatus::Failure;
  return TickStatus::Running;
}

TickStatus SkillHost::handle_tick(Hosted& skill) {
  // One tick: deliver `tick`, then follow state bindings (component query,
  // reply event) until the chart settles in an unbound state.
  try {
    skill.instance->deliver(Event{"tick", {}});
    constexpr int kMaxBindingHops = 8;
    for (int hops = 0; hops <= kMaxBindingHops; ++hops) {
      auto it = skill.def.bindings.find(skill.instance->state());
      if (it == skill.def.bindings.end()) {
        break;
      }
      if (hops == kMaxBindingHops) {
        throw ProtocolError("skill '" + skill.def.id +
                            "': binding loop did not settle within " +
                            std::to_string(kMaxBindingHops) + " hops");
      }
      Payload reply = run_binding(skill, it->second);
      const TransitionReport report =
          skill.instance->deliver(Event{it->second.reply_event, std::move(reply)});
      if (!report.fired) {
        throw ProtocolError("skill '" + skill.def.id + "': state '" + report.from +
                            "' did not consume reply event '" +
                            it->second.reply_event + "'");
      }
    }
  } catch (const QueryError& e) {
    // Component fault: the bus already traced the fault reply.
    spdlog::debug("skill {}: component fault: {}", skill.def.id, e.what());
    skill.instance->reset_state();
    return TickStatus::Failure;
  }

  const TickStatus status = map_state(skill);
  if (skill.def.kind == SkillDef::Kind::Condition) {
    if (status == TickStatus::Running) {
      throw ProtocolError("condition skill '" + skill.def.id +
                          "' settled in non-terminal state '" +
                          skill.instance->state() + "'");
    }
    skill.instance->reset_state();  // conditions are stateless across ticks
  }
  return status;
}

void SkillHost::handle_halt(Hosted& skill) {
  if (skill.def.kind != SkillDef::Kind::Action) {
    throw ProtocolError("halt on condition skill '" + skill.def.id +
                        "' is a protocol error");
  }
  const std::string& state = skill.instance->state();
  const bool active = state != skill.def.chart.initial &&
                      skill.def.success_states.count(state) == 0 &&
                      skill.def.failure_states.count(state) == 0;
  if (active && skill.def.halt_binding.has_value()) {
    run_binding(skill, *skill.def.halt_binding);
  }
  skill.instance->reset_state();
}

std::vector<std::string> SkillHost::skill_ids() const {
  std::vector<std::string> out;
  out.reserve(skills_.size());
  for (const auto& [id, hosted] : skills_) {
    out.push_back(id);
  }
  return out;
}

const SkillDef& SkillHost::definition(const std::string& id) const {
  auto it = skills_.find(id);
  if (it == skills_.end()) {
    throw WiringError("unknown skill '" + id + "'");
  }
  return it->second->def;
}

const ChartInstance& SkillHost::instance(const std::string& id) const {
  auto it = skills_.find(id);
  if (it == skills_.end()) {
    throw WiringError("unknown skill '" + id + "'");
  }
  return *it->second->instance;
}

BusLeafExecutor::BusLeafExecutor(Bus& bus, std::string client_name)
    : bus_(&bus), client_(std::move(client_name)) {}

TickStatus BusLeafExecutor::tick_leaf(const std::string& leaf_id) {
  const Payload reply = bus_->query(client_, leaf_id, "tick");
  auto it = reply.find("status");
  if (it == reply.end() || !is_string(it->second)) {
    throw ProtocolError("skill '" + leaf_id + "' tick reply lacks a status field");
  }
  return tick_status_from_string(std::get<std::string>(it->second));
}

void BusLeafExecutor::halt_leaf(const std::string& leaf_id) {
  bus_->query(client_, leaf_id, "halt");
}

}  // namespace btverify
