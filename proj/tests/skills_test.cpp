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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include <doctest.h>

#include "btverify/errors.hpp"
#include "btverify/world.hpp"

using namespace btverify;

namespace {

std::string share(const std::string& rel) {
  return std::string(BTVERIFY_SHARE_DIR) + "/" + rel;
}

struct Rig {
  GridMap map;
  World world;
  Bus bus;
  std::unique_ptr<SkillHost> host;
  BusLeafExecutor executor;

  explicit Rig(WorldConfig cfg = {})
      : map(load_map(share("maps/office.map"), share("maps/office.locations.json"))),
        world(map, cfg),
        executor(bus) {
    register_service_endpoints(bus, world);
    host = std::make_unique<SkillHost>(
        bus,
        [this](const std::string& name) -> std::optional<Pose> {
          const Pose* p = map.find_location(name);
          return p == nullptr ? std::nullopt : std::optional<Pose>(*p);
        });
    for (SkillDef& def : load_skills_manifest(share("skills/skills.json"))) {
      host->add_skill(std::move(def));
    }
  }

  TickStatus tick(const std::string& id) { return executor.tick_leaf(id); }
  void halt(const std::string& id) { executor.halt_leaf(id); }
};

}  // namespace

TEST_CASE("manifest: five scenario skills load") {
  const auto defs = load_skills_manifest(share("skills/skills.json"));
  REQUIRE(defs.size() == 6);  // five roles, two goto instances
  std::vector<std::string> ids;
  for (const auto& d : defs) ids.push_back(d.id);
  for (const char* expected :
       {"BatteryLevelAbove30", "BatteryNotRecharging", "AtChargingStation",
        "GotoDestination", "GotoChargingStation", "WaitForUser"}) {
    CHECK(std::find(ids.begin(), ids.end(), expected) != ids.end());
  }
}

TEST_CASE("battery level condition: threshold semantics") {
  Rig rig;
  rig.world.set_battery_level(100.0);
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Success);
  rig.world.set_battery_level(25.0);
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Failure);
  // Exactly 30 errs safe: not above the threshold.
  rig.world.set_battery_level(30.0);
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Failure);
}

TEST_CASE("battery level condition: exactly one component query per tick") {
  Rig rig;
  int level_requests = 0;
  rig.bus.attach_portmonitor({"BatteryLevelAbove30", "battery"},
                             [&level_requests](const Message& m) {
                               if (m.direction == Direction::Request) ++level_requests;
                             });
  for (int i = 0; i < 5; ++i) {
    rig.tick("BatteryLevelAbove30");
  }
  CHECK(level_requests == 5);
}

TEST_CASE("battery recharging condition") {
  WorldConfig cfg;
  cfg.start_location = "charging_station";
  Rig rig(cfg);
  CHECK(rig.tick("BatteryNotRecharging") == TickStatus::Success);
  rig.world.set_battery_level(40.0);
  rig.world.plug_cable();
  CHECK(rig.tick("BatteryNotRecharging") == TickStatus::Failure);
}

TEST_CASE("at-location condition: tolerance around the named point") {
  WorldConfig cfg;
  cfg.start_location = "charging_station";
  Rig rig(cfg);
  CHECK(rig.tick("AtChargingStation") == TickStatus::Success);

  WorldConfig away;
  away.start_location = "start";
  Rig rig2(away);
  CHECK(rig2.tick("AtChargingStation") == TickStatus::Failure);
}

TEST_CASE("conditions are stateless across ticks") {
  Rig rig;
  rig.world.set_battery_level(80.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Success);
    CHECK(rig.host->instance("BatteryLevelAbove30").state() == "idle");
  }
}

TEST_CASE("goto action: command once per activation, then polling") {
  WorldConfig cfg;
  cfg.speed = 1.0;
  Rig rig(cfg);

  int goto_requests = 0;
  int status_requests = 0;
  rig.bus.attach_portmonitor(
      {"GotoDestination", "navigation"}, [&](const Message& m) {
        if (m.direction != Direction::Request) return;
        if (m.procedure == "gotoTargetByLocationName") ++goto_requests;
        if (m.procedure == "getNavigationStatus") ++status_requests;
      });

  CHECK(rig.tick("GotoDestination") == TickStatus::Running);
  CHECK(goto_requests == 1);
  CHECK(status_requests == 0);
  CHECK(rig.world.nav().status == NavStatus::Navigating);
  CHECK(rig.world.nav().goal == "destination");

  for (int i = 0; i < 4; ++i) {
    rig.world.step();
    CHECK(rig.tick("GotoDestination") == TickStatus::Running);
  }
  CHECK(goto_requests == 1);  // still the single activation command
  CHECK(status_requests == 4);

  // Drive until the simulator reports arrival.
  TickStatus status = TickStatus::Running;
  for (int i = 0; i < 100 && status == TickStatus::Running; ++i) {
    rig.world.step();
    status = rig.tick("GotoDestination");
  }
  CHECK(status == TickStatus::Success);
  CHECK(goto_requests == 1);
}

TEST_CASE("goto action: path_not_found maps to failure") {
  Rig rig;
  // Sabotage: station goal name resolves, but planning from inside a sealed
  // region is impossible. Easier: replace the navigation endpoint with one
  // that always reports path_not_found.
  rig.bus.unregister_endpoint("navigation");
  rig.bus.register_endpoint(
      "navigation", [](const QueryContext& ctx, const Payload&) -> Payload {
        if (ctx.procedure == "getNavigationStatus") {
          return {{"status", std::string("path_not_found")}};
        }
        return {};
      });
  CHECK(rig.tick("GotoDestination") == TickStatus::Running);  // command tick
  CHECK(rig.tick("GotoDestination") == TickStatus::Failure);  // first poll
}

TEST_CASE("goto action: halt stops the base and resets the chart") {
  WorldConfig cfg;
  cfg.speed = 1.0;
  Rig rig(cfg);

  int stop_requests = 0;
  int goto_requests = 0;
  rig.bus.attach_portmonitor(
      {"GotoDestination", "navigation"}, [&](const Message& m) {
        if (m.direction != Direction::Request) return;
        if (m.procedure == "stopNavigation") ++stop_requests;
        if (m.procedure == "gotoTargetByLocationName") ++goto_requests;
      });

  rig.tick("GotoDestination");
  rig.world.step();
  rig.halt("GotoDestination");
  CHECK(stop_requests == 1);
  CHECK(rig.host->instance("GotoDestination").state() == "idle");
  CHECK(rig.world.nav().status == NavStatus::Idle);

  const double x = rig.world.robot().pose.x;
  rig.world.step();
  CHECK(rig.world.robot().pose.x == x);

  // A new activation issues the command again.
  CHECK(rig.tick("GotoDestination") == TickStatus::Running);
  CHECK(goto_requests == 2);
}

TEST_CASE("halt on an idle action performs no component query") {
  Rig rig;
  int requests = 0;
  rig.bus.attach_portmonitor({"GotoDestination", "navigation"},
                             [&requests](const Message& m) {
                               if (m.direction == Direction::Request) ++requests;
                             });
  rig.halt("GotoDestination");
  CHECK(requests == 0);
  CHECK(rig.host->instance("GotoDestination").state() == "idle");
}

TEST_CASE("halt on a condition skill is a protocol error") {
  Rig rig;
  CHECK_THROWS_AS(rig.halt("BatteryLevelAbove30"), QueryError);
}

TEST_CASE("wait-for-user runs forever and halts quietly") {
  Rig rig;
  for (int i = 0; i < 3; ++i) {
    CHECK(rig.tick("WaitForUser") == TickStatus::Running);
  }
  rig.halt("WaitForUser");
  CHECK(rig.tick("WaitForUser") == TickStatus::Running);
}

TEST_CASE("component faults surface as skill failure") {
  Rig rig;
  rig.bus.unregister_endpoint("battery");
  rig.bus.register_endpoint("battery", [](const QueryContext&, const Payload&) -> Payload {
    throw ProtocolError("battery reader offline");
  });
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Failure);
  // Chart is back at idle for the next attempt.
  CHECK(rig.host->instance("BatteryLevelAbove30").state() == "idle");
}

TEST_CASE("threshold bug injection via the fault channel") {
  Rig rig;
  rig.world.set_battery_level(25.0);
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Failure);

  // Only the injector client may rewrite skill variables.
  CHECK_THROWS_AS(
      rig.bus.query("bt", "BatteryLevelAbove30", "set_variable",
                    {{"name", std::string("threshold")}, {"value", 20.0}}),
      QueryError);

  rig.bus.query("injector", "BatteryLevelAbove30", "set_variable",
                {{"name", std::string("threshold")}, {"value", 20.0}});
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Success);
  rig.world.set_battery_level(19.0);
  CHECK(rig.tick("BatteryLevelAbove30") == TickStatus::Failure);
}

TEST_CASE("unknown leaf id aborts with a wiring error") {
  Rig rig;
  CHECK_THROWS_AS(rig.tick("NoSuchSkill"), WiringError);
}

TEST_CASE("manifest variables override chart defaults per instance") {
  // A generous at-location tolerance makes the far-away start count as
  // "at the station".
  const auto dir = std::filesystem::temp_directory_path() / "btverify_skills_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream manifest(dir / "loose.json");
    manifest << R"({"skills": [{
      "id": "LooselyAtStation",
      "kind": "condition",
      "chart": ")" << share("skills/at_location.scxml") << R"(",
      "endpoint": "localization",
      "params": {"location": "charging_station"},
      "variables": {"tolerance": 50.0},
      "bindings": {"get": {"procedure": "getCurrentPosition",
                            "reply_event": "reply",
                            "distance_to_param": "location"}},
      "success_states": ["success"],
      "failure_states": ["failure"]
    }]})";
  }
  Rig rig;
  CHECK(rig.tick("AtChargingStation") == TickStatus::Failure);  // strict default
  for (SkillDef& def : load_skills_manifest(dir / "loose.json")) {
    rig.host->add_skill(std::move(def));
  }
  CHECK(rig.tick("LooselyAtStation") == TickStatus::Success);
}
