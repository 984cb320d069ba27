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

#include "btverify/raycast.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace btverify {

double raycast_beam(const GridMap& map, double x, double y, double angle,
                    double max_range) {
  int cx = static_cast<int>(std::floor(x));
  int cy = static_cast<int>(std::floor(y));
  if (map.occupied(cx, cy)) {
    return 0.0;
  }

  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);

  // Ray parameter at which the next vertical / horizontal grid line is hit.
  double t_max_x = kInf;
  double t_delta_x = kInf;
  if (step_x != 0) {
    const double boundary = step_x > 0 ? std::floor(x) + 1.0 : std::floor(x);
    t_max_x = (boundary - x) / dx;
    t_delta_x = step_x / dx;
  }
  double t_max_y = kInf;
  double t_delta_y = kInf;
  if (step_y != 0) {
    const double boundary = step_y > 0 ? std::floor(y) + 1.0 : std::floor(y);
    t_max_y = (boundary - y) / dy;
    t_delta_y = step_y / dy;
  }

  for (;;) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      cx += step_x;
      t_max_x += t_delta_x;
    } else if (t_max_y < t_max_x) {
      t = t_max_y;
      cy += step_y;
      t_max_y += t_delta_y;
    } else {
      // Exact corner crossing: the ray enters the diagonal cell.
      t = t_max_x;
      cx += step_x;
      cy += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    }
    if (t > max_range) {
      return max_range;
    }
    if (map.occupied(cx, cy)) {
      return t;
    }
  }
}

std::vector<double> raycast(const GridMap& map, const Pose& pose, int beam_count,
                            double max_range) {
  std::vector<double> readings;
  readings.reserve(static_cast<size_t>(beam_count));
  for (int i = 0; i < beam_count; ++i) {
    const double angle =
        pose.theta + 2.0 * std::numbers::pi * static_cast<double>(i) / beam_count;
    readings.push_back(raycast_beam(map, pose.x, pose.y, angle, max_range));
  }
  return readings;
}

}  // namespace btverify
