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

#ifndef BTVERIFY_WORLD_HPP_
#define BTVERIFY_WORLD_HPP_

#include <string>
#include <vector>

#include "btverify/bus.hpp"
#include "btverify/grid_map.hpp"

namespace btverify {

struct RobotState {
  Pose pose;
  double speed = 1.0;  // cells per step while navigating
};

struct BatteryState {
  double level = 100.0;  // percent
  bool charging = false;
  double drain_rate = 0.2;  // percent per step
  double charge_rate = 1.0;
};

enum class NavStatus { Idle, Navigating, Reached, PathNotFound };

std::string_view to_string(NavStatus s);

struct NavigationState {
  NavStatus status = NavStatus::Idle;
  std::string goal;          // location name, empty when idle
  std::vector<Cell> path;    // planned cells, start first
  size_t next_waypoint = 0;  // index into path
};

struct WorldConfig {
  double speed = 1.0;
  double drain_rate = 0.2;
  double charge_rate = 1.0;
  double initial_battery = 100.0;
  double goal_tolerance = 0.3;  // cells, Euclidean; also at-location radius
  int inflate_radius = 1;       // planning-map obstacle growth
  std::string start_location = "start";
  std::string charging_station = "charging_station";
};

/// Deterministic 2D world advanced in discrete lockstep: one step() per
/// behavior-tree tick. Single-threaded by contract; service handlers run
/// on the engine thread via the bus.
class World {
 public:
  World(GridMap map, const WorldConfig& config);

  /// Advances one time step: moves the robot along its path, updates the
  /// navigation status, then drains or charges the battery.
  void step();

  // Navigation commands (the navigation service endpoint).
  void goto_location(const std::string& name);  // throws WiringError on unknown name
  void stop_navigation();

  // Fault-injection / scenario controls.
  void set_battery_level(double level);
  void plug_cable();
  bool cable_plugged() const { return cable_plugged_; }

  bool at_location(const std::string& name) const;

  const GridMap& map() const { return map_; }
  const GridMap& planning_map() const { return planning_map_; }
  const RobotState& robot() const { return robot_; }
  const BatteryState& battery() const { return battery_; }
  const NavigationState& nav() const { return nav_; }
  const WorldConfig& config() const { return config_; }
  int step_count() const { return step_count_; }

  std::vector<double> laser_scan(int beam_count, double max_range) const;

  struct Snapshot {
    int step = 0;
    double x = 0, y = 0, theta = 0;
    double level = 0;
    bool charging = false;
    NavStatus nav_status = NavStatus::Idle;
    std::string goal;

    bool operator==(const Snapshot&) const = default;
  };
  Snapshot snapshot() const;

 private:
  void move_along_path();
  void update_charging();
  const Pose& location_or_throw(const std::string& name) const;

  GridMap map_;
  GridMap planning_map_;
  WorldConfig config_;
  RobotState robot_;
  BatteryState battery_;
  NavigationState nav_;
  bool cable_plugged_ = false;
  int step_count_ = 0;
};

/// Registers the three service-layer endpoints on the bus:
///   battery:      level(), charging_status(), set_level(level),
///                 plug_cable()            [last two: injector client only]
///   localization: getCurrentPosition()
///   navigation:   gotoTargetByLocationName(name), getNavigationStatus(),
///                 stopNavigation()
/// The world reference must outlive the bus registrations.
void register_service_endpoints(Bus& bus, World& world,
                                const std::string& injector_client = "injector");

}  // namespace btverify

#endif  // BTVERIFY_WORLD_HPP_
