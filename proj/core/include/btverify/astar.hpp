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

#ifndef BTVERIFY_ASTAR_HPP_
#define BTVERIFY_ASTAR_HPP_

#include <vector>

#include "btverify/grid_map.hpp"

namespace btverify {

// Straight and diagonal step costs in tenths of a cell. Both the planner
// and any oracle comparing against it must use the same metric.
inline constexpr int kStraightCost = 10;
inline constexpr int kDiagonalCost = 14;

struct PathResult {
  bool found = false;
  std::vector<Cell> cells;  // includes the start cell when found
  int cost_tenths = 0;

  double cost() const { return cost_tenths / 10.0; }
};

/// 8-connected A* with the octile heuristic. Diagonal steps are allowed
/// only when both adjacent orthogonal cells are free (no corner cutting).
/// An occupied or unreachable goal yields found=false. Deterministic:
/// ties are broken by heuristic then by cell order.
PathResult plan_path(const GridMap& map, Cell from, Cell to);

}  // namespace btverify

#endif  // BTVERIFY_ASTAR_HPP_
