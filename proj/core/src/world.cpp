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

#include "btverify/world.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "btverify/astar.hpp"
#include "btverify/errors.hpp"
#include "btverify/raycast.hpp"

namespace btverify {

namespace {

double distance(double ax, double ay, double bx, double by) {
  return std::hypot(bx - ax, by - ay);
}

Pose cell_center(Cell c) {
  return Pose{c.first + 0.5, c.second + 0.5, 0.0};
}

}  // namespace

std::string_view to_string(NavStatus s) {
  switch (s) {
    case NavStatus::Idle: return "idle";
    case NavStatus::Navigating: return "navigating";
    case NavStatus::Reached: return "reached";
    case NavStatus::PathNotFound: return "path_not_found";
  }
  return "invalid";
}

World::World(GridMap map, const WorldConfig& config)
    : map_(std::move(map)),
      planning_map_(map_.inflated(config.inflate_radius)),
      config_(config) {
  robot_.speed = config.speed;
  battery_.level = std::clamp(config.initial_battery, 0.0, 100.0);
  battery_.drain_rate = config.drain_rate;
  battery_.charge_rate = config.charge_rate;
  robot_.pose = location_or_throw(config.start_location);
  if (!map_.free_at(robot_.pose.x, robot_.pose.y)) {
    throw ConfigError("start location lies on an obstacle cell");
  }
}

const Pose& World::location_or_throw(const std::string& name) const {
  const Pose* p = map_.find_location(name);
  if (p == nullptr) {
    throw WiringError("unknown map location '" + name + "'");
  }
  return *p;
}

void World::goto_location(const std::string& name) {
  const Pose& target = location_or_throw(name);
  const Cell from{static_cast<int>(std::floor(robot_.pose.x)),
                  static_cast<int>(std::floor(robot_.pose.y))};
  const Cell to{static_cast<int>(std::floor(target.x)),
                static_cast<int>(std::floor(target.y))};
  PathResult plan = plan_path(planning_map_, from, to);
  nav_.goal = name;
  if (!plan.found) {
    nav_.status = NavStatus::PathNotFound;
    nav_.path.clear();
    nav_.next_waypoint = 0;
    return;
  }
  nav_.status = NavStatus::Navigating;
  nav_.path = std::move(plan.cells);
  nav_.next_waypoint = 0;
}

void World::stop_navigation() {
  nav_.status = NavStatus::Idle;
  nav_.goal.clear();
  nav_.path.clear();
  nav_.next_waypoint = 0;
}

void World::set_battery_level(double level) {
  battery_.level = std::clamp(level, 0.0, 100.0);
}

void World::plug_cable() {
  cable_plugged_ = true;
  update_charging();
}

bool World::at_location(const std::string& name) const {
  const Pose& p = location_or_throw(name);
  return distance(robot_.pose.x, robot_.pose.y, p.x, p.y) <= config_.goal_tolerance;
}

void World::move_along_path() {
  double budget = robot_.speed;
  while (budget > 0.0 && nav_.next_waypoint < nav_.path.size()) {
    const Pose target = cell_center(nav_.path[nav_.next_waypoint]);
    const double d = distance(robot_.pose.x, robot_.pose.y, target.x, target.y);
    if (d <= 1e-12) {
      ++nav_.next_waypoint;
      continue;
    }
    const double dir_x = (target.x - robot_.pose.x) / d;
    const double dir_y = (target.y - robot_.pose.y) / d;
    robot_.pose.theta = std::atan2(dir_y, dir_x);
    if (d <= budget) {
      robot_.pose.x = target.x;
      robot_.pose.y = target.y;
      budget -= d;
      ++nav_.next_waypoint;
    } else {
      robot_.pose.x += dir_x * budget;
      robot_.pose.y += dir_y * budget;
      budget = 0.0;
    }
  }
}

void World::update_charging() {
  battery_.charging =
      cable_plugged_ && at_location(config_.charging_station) && battery_.level < 100.0;
}

void World::step() {
  ++step_count_;

  if (nav_.status == NavStatus::Navigating) {
    move_along_path();
    const Pose& goal = location_or_throw(nav_.goal);
    if (distance(robot_.pose.x, robot_.pose.y, goal.x, goal.y) <=
        config_.goal_tolerance) {
      nav_.status = NavStatus::Reached;
      nav_.path.clear();
      nav_.next_waypoint = 0;
    }
  }

  update_charging();
  if (battery_.charging) {
    battery_.level = std::min(100.0, battery_.level + battery_.charge_rate);
    if (battery_.level >= 100.0) {
      battery_.level = 100.0;
      // Fully charged: the operator unplugs the cable.
      cable_plugged_ = false;
      battery_.charging = false;
    }
  } else {
    battery_.level = std::max(0.0, battery_.level - battery_.drain_rate);
  }
}

std::vector<double> World::laser_scan(int beam_count, double max_range) const {
  return raycast(map_, robot_.pose, beam_count, max_range);
}

World::Snapshot World::snapshot() const {
  Snapshot s;
  s.step = step_count_;
  s.x = robot_.pose.x;
  s.y = robot_.pose.y;
  s.theta = robot_.pose.theta;
  s.level = battery_.level;
  s.charging = battery_.charging;
  s.nav_status = nav_.status;
  s.goal = nav_.goal;
  return s;
}

void register_service_endpoints(Bus& bus, World& world,
                                const std::string& injector_client) {
  bus.register_endpoint(
      "battery",
      [&world, injector_client](const QueryContext& ctx, const Payload& args) -> Payload {
        if (ctx.procedure == "level") {
          return {{"level", world.battery().level}};
        }
        if (ctx.procedure == "charging_status") {
          return {{"charging", world.battery().charging}};
        }
        if (ctx.procedure == "set_level" || ctx.procedure == "plug_cable") {
          if (ctx.client != injector_client) {
            throw ProtocolError("procedure '" + ctx.procedure +
                                "' is reachable only from the fault-injection channel");
          }
          if (ctx.procedure == "set_level") {
            auto it = args.find("level");
            if (it == args.end() || !is_number(it->second)) {
              throw ProtocolError("set_level requires a numeric 'level' argument");
            }
            world.set_battery_level(std::get<double>(it->second));
          } else {
            world.plug_cable();
          }
          return {};
        }
        throw ProtocolError("battery: unknown procedure '" + ctx.procedure + "'");
      });

  bus.register_endpoint(
      "localization",
      [&world](const QueryContext& ctx, const Payload&) -> Payload {
        if (ctx.procedure == "getCurrentPosition") {
          const Pose& p = world.robot().pose;
          return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}};
        }
        throw ProtocolError("localization: unknown procedure '" + ctx.procedure + "'");
      });

  bus.register_endpoint(
      "navigation",
      [&world](const QueryContext& ctx, const Payload& args) -> Payload {
        if (ctx.procedure == "gotoTargetByLocationName") {
          auto it = args.find("name");
          if (it == args.end() || !is_string(it->second)) {
            throw ProtocolError(
                "gotoTargetByLocationName requires a string 'name' argument");
          }
          world.goto_location(std::get<std::string>(it->second));
          return {};
        }
        if (ctx.procedure == "getNavigationStatus") {
          return {{"status", std::string(to_string(world.nav().status))}};
        }
        if (ctx.procedure == "stopNavigation") {
          world.stop_navigation();
          return {};
        }
        throw ProtocolError("navigation: unknown procedure '" + ctx.procedure + "'");
      });
}

}  // namespace btverify
