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

#ifndef BTVERIFY_RAYCAST_HPP_
#define BTVERIFY_RAYCAST_HPP_

#include <vector>

#include "btverify/grid_map.hpp"

namespace btverify {

/// Distance along the ray from (x, y) at `angle` to the boundary of the
/// first occupied cell (DDA grid traversal), capped at max_range. A start
/// inside an occupied cell reads 0.
double raycast_beam(const GridMap& map, double x, double y, double angle,
                    double max_range);

/// beam_count radial beams; beam i leaves at pose.theta + 2*pi*i/beam_count.
std::vector<double> raycast(const GridMap& map, const Pose& pose, int beam_count,
                            double max_range);

}  // namespace btverify

#endif  // BTVERIFY_RAYCAST_HPP_
