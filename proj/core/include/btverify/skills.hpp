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

#ifndef BTVERIFY_SKILLS_HPP_
#define BTVERIFY_SKILLS_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "btverify/behavior_tree.hpp"
#include "btverify/bus.hpp"
#include "btverify/grid_map.hpp"
#include "btverify/statechart.hpp"

namespace btverify {

/// A component query issued when the skill chart sits in a given state.
/// The reply payload comes back to the chart as `reply_event`.
struct SkillBinding {
  std::string procedure;
  Payload args;                                        // static arguments
  std::map<std::string, std::string> args_from_params; // arg field <- param name
  std::string reply_event = "reply";
  // When set, the reply gains a "distance" field: the Euclidean distance
  // from the replied x/y to the named location held in this skill param.
  std::optional<std::string> distance_to_param;
};

struct SkillDef {
  enum class Kind { Condition, Action };

  std::string id;      // behavior tree leaf id and bus endpoint name
  Kind kind = Kind::Condition;
  std::string endpoint;  // component the skill orchestrates
  StateChart chart;
  std::map<std::string, SkillBinding> bindings;  // keyed by chart state
  std::optional<SkillBinding> halt_binding;
  std::set<std::string> success_states;
  std::set<std::string> failure_states;
  Payload params;     // e.g. {"location": "destination"}
  Payload variables;  // instance variable overrides
};

/// Loads a skills manifest (JSON): chart files are resolved relative to
/// the manifest location.
std::vector<SkillDef> load_skills_manifest(const std::filesystem::path& manifest);

using LocationLookup = std::function<std::optional<Pose>(const std::string&)>;

/// Hosts skill instances as bus endpoints named by skill id, each serving
/// the procedures `tick` -> {status}, `halt` and `set_variable` (the last
/// restricted to the fault-injection client). Per-skill requests are
/// serialized; distinct skills are independent.
class SkillHost {
 public:
  SkillHost(Bus& bus, LocationLookup locations,
            std::string injector_client = "injector");
  ~SkillHost();

  SkillHost(const SkillHost&) = delete;
  SkillHost& operator=(const SkillHost&) = delete;

  void add_skill(SkillDef def);

  std::vector<std::string> skill_ids() const;
  const SkillDef& definition(const std::string& id) const;
  const ChartInstance& instance(const std::string& id) const;

 private:
  struct Hosted {
    SkillDef def;
    std::unique_ptr<ChartInstance> instance;
    std::mutex mutex;
  };

  TickStatus handle_tick(Hosted& skill);
  void handle_halt(Hosted& skill);
  TickStatus map_state(const Hosted& skill) const;
  Payload run_binding(Hosted& skill, const SkillBinding& binding);

  Bus* bus_;
  LocationLookup locations_;
  std::string injector_client_;
  std::map<std::string, std::unique_ptr<Hosted>> skills_;
};

/// Behavior-tree leaf executor that forwards tick/halt over the bus to
/// the skill endpoint matching the leaf id.
class BusLeafExecutor final : public LeafExecutor {
 public:
  explicit BusLeafExecutor(Bus& bus, std::string client_name = "bt");

  TickStatus tick_leaf(const std::string& leaf_id) override;
  void halt_leaf(const std::string& leaf_id) override;

 private:
  Bus* bus_;
  std::string client_;
};

}  // namespace btverify

#endif  // BTVERIFY_SKILLS_HPP_
