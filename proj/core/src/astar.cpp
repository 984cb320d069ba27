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

#include "btverify/astar.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>

namespace btverify {

namespace {

struct OpenEntry {
  int f = 0;
  int h = 0;
  int index = 0;  // y * width + x

  // Priority queue pops the smallest f; ties prefer the smaller heuristic
  // (closer to goal), then the smaller cell index, keeping expansion order
  // deterministic.
  bool operator>(const OpenEntry& other) const {
    if (f != other.f) return f > other.f;
    if (h != other.h) return h > other.h;
    return index > other.index;
  }
};

int octile(Cell a, Cell b) {
  const int dx = std::abs(a.first - b.first);
  const int dy = std::abs(a.second - b.second);
  return kDiagonalCost * std::min(dx, dy) + kStraightCost * std::abs(dx - dy);
}

}  // namespace

PathResult plan_path(const GridMap& map, Cell from, Cell to) {
  PathResult result;
  if (map.occupied(from.first, from.second) || map.occupied(to.first, to.second)) {
    return result;
  }

  const int width = map.width();
  const int height = map.height();
  const auto index_of = [width](Cell c) { return c.second * width + c.first; };

  std::vector<int> g(static_cast<size_t>(width) * height,
                     std::numeric_limits<int>::max());
  std::vector<int> parent(static_cast<size_t>(width) * height, -1);
  std::vector<char> closed(static_cast<size_t>(width) * height, 0);

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>> open;
  g[index_of(from)] = 0;
  open.push({octile(from, to), octile(from, to), index_of(from)});

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    if (closed[top.index]) continue;
    closed[top.index] = 1;

    const Cell cell{top.index % width, top.index / width};
    if (cell == to) {
      result.found = true;
      result.cost_tenths = g[top.index];
      for (int i = top.index; i != -1; i = parent[i]) {
        result.cells.push_back({i % width, i / width});
      }
      std::reverse(result.cells.begin(), result.cells.end());
      return result;
    }

    for (int k = 0; k < 8; ++k) {
      const int nx = cell.first + kDx[k];
      const int ny = cell.second + kDy[k];
      if (map.occupied(nx, ny)) continue;
      const bool diagonal = kDx[k] != 0 && kDy[k] != 0;
      if (diagonal &&
          (map.occupied(cell.first + kDx[k], cell.second) ||
           map.occupied(cell.first, cell.second + kDy[k]))) {
        continue;  // no corner cutting
      }
      const int step = diagonal ? kDiagonalCost : kStraightCost;
      const int nindex = ny * width + nx;
      const int ng = g[top.index] + step;
      if (ng < g[nindex]) {
        g[nindex] = ng;
        parent[nindex] = top.index;
        const int h = octile({nx, ny}, to);
        open.push({ng + h, h, nindex});
      }
    }
  }
  return result;
}

}  // namespace btverify
