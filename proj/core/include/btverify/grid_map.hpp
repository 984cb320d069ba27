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

#ifndef BTVERIFY_GRID_MAP_HPP_
#define BTVERIFY_GRID_MAP_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace btverify {

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

using Cell = std::pair<int, int>;

/// Occupancy grid over unit cells: cell (cx, cy) covers [cx, cx+1) x
/// [cy, cy+1). Out-of-bounds space counts as occupied.
class GridMap {
 public:
  GridMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int cx, int cy) const {
    return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
  }
  bool occupied(int cx, int cy) const {
    return !in_bounds(cx, cy) || cells_[static_cast<size_t>(cy) * width_ + cx];
  }
  void set_occupied(int cx, int cy, bool value);

  bool free_at(double x, double y) const;
  bool border_closed() const;

  /// Copy with every obstacle grown by `radius` cells (Chebyshev metric),
  /// used as the planning map so paths keep clearance from walls.
  GridMap inflated(int radius) const;

  const std::map<std::string, Pose>& named_locations() const { return locations_; }
  void add_location(const std::string& name, Pose p);
  const Pose* find_location(const std::string& name) const;

  /// Parses the ASCII format: '#' obstacle, '.' free, letters name free
  /// cells (resolved against the sidecar by load_map). Rows must have
  /// equal length.
  static GridMap parse_ascii(const std::string& text);

  const std::map<char, Cell>& letter_cells() const { return letters_; }

 private:
  int width_;
  int height_;
  std::vector<char> cells_;  // 1 = obstacle
  std::map<std::string, Pose> locations_;
  std::map<char, Cell> letters_;
};

/// Loads the ASCII grid plus its JSON sidecar naming the letter cells:
///   {"locations": {"D": {"name": "destination", "theta": 0.0}, ...}}
/// Locations are placed at cell centers. Validates that named locations
/// lie on free cells and that the border is obstacle-closed.
GridMap load_map(const std::filesystem::path& ascii_file,
                 const std::filesystem::path& sidecar_file);

}  // namespace btverify

#endif  // BTVERIFY_GRID_MAP_HPP_
