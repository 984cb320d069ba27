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

#include "btverify/grid_map.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "btverify/errors.hpp"

namespace btverify {

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ParseError("map dimensions must be positive");
  }
  cells_.assign(static_cast<size_t>(width) * height, 0);
}

void GridMap::set_occupied(int cx, int cy, bool value) {
  if (!in_bounds(cx, cy)) {
    throw ParseError("set_occupied out of bounds");
  }
  cells_[static_cast<size_t>(cy) * width_ + cx] = value ? 1 : 0;
}

bool GridMap::free_at(double x, double y) const {
  return !occupied(static_cast<int>(std::floor(x)), static_cast<int>(std::floor(y)));
}

bool GridMap::border_closed() const {
  for (int x = 0; x < width_; ++x) {
    if (!occupied(x, 0) || !occupied(x, height_ - 1)) return false;
  }
  for (int y = 0; y < height_; ++y) {
    if (!occupied(0, y) || !occupied(width_ - 1, y)) return false;
  }
  return true;
}

GridMap GridMap::inflated(int radius) const {
  GridMap out = *this;
  if (radius <= 0) return out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!cells_[static_cast<size_t>(y) * width_ + x]) continue;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (in_bounds(x + dx, y + dy)) {
            out.cells_[static_cast<size_t>(y + dy) * width_ + (x + dx)] = 1;
          }
        }
      }
    }
  }
  return out;
}

void GridMap::add_location(const std::string& name, Pose p) {
  locations_[name] = p;
}

const Pose* GridMap::find_location(const std::string& name) const {
  auto it = locations_.find(name);
  return it == locations_.end() ? nullptr : &it->second;
}

GridMap GridMap::parse_ascii(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(line);
  }
  if (rows.empty()) {
    throw ParseError("map has no rows");
  }
  const size_t width = rows.front().size();
  for (size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != width) {
      throw ParseError("map row " + std::to_string(y) + " has length " +
                       std::to_string(rows[y].size()) + ", expected " +
                       std::to_string(width));
    }
  }
  GridMap map(static_cast<int>(width), static_cast<int>(rows.size()));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const char c = rows[y][static_cast<size_t>(x)];
      if (c == '#') {
        map.set_occupied(x, y, true);
      } else if (c == '.') {
        // free
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        if (!map.letters_.emplace(c, Cell{x, y}).second) {
          throw ParseError(std::string("duplicate location letter '") + c + "'");
        }
      } else {
        throw ParseError(std::string("unexpected map character '") + c + "'");
      }
    }
  }
  return map;
}

GridMap load_map(const std::filesystem::path& ascii_file,
                 const std::filesystem::path& sidecar_file) {
  std::ifstream in(ascii_file);
  if (!in) {
    throw ConfigError("cannot open map file: " + ascii_file.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  GridMap map = GridMap::parse_ascii(buffer.str());

  std::ifstream side(sidecar_file);
  if (!side) {
    throw ConfigError("cannot open map sidecar: " + sidecar_file.string());
  }
  nlohmann::json j;
  try {
    side >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("map sidecar " + sidecar_file.string() + ": " + e.what());
  }
  if (!j.contains("locations") || !j["locations"].is_object()) {
    throw ParseError("map sidecar " + sidecar_file.string() +
                     ": missing 'locations' object");
  }
  for (const auto& [letter, entry] : j["locations"].items()) {
    if (letter.size() != 1) {
      throw ParseError("map sidecar: location key '" + letter +
                       "' must be a single letter");
    }
    auto cell_it = map.letter_cells().find(letter[0]);
    if (cell_it == map.letter_cells().end()) {
      throw ParseError("map sidecar names letter '" + letter +
                       "' that does not appear in the map");
    }
    const std::string name = entry.at("name").get<std::string>();
    const double theta = entry.value("theta", 0.0);
    const auto [cx, cy] = cell_it->second;
    map.add_location(name, Pose{cx + 0.5, cy + 0.5, theta});
  }
  for (const auto& [letter, cell] : map.letter_cells()) {
    bool named = false;
    for (const auto& [name, pose] : map.named_locations()) {
      if (static_cast<int>(pose.x) == cell.first &&
          static_cast<int>(pose.y) == cell.second) {
        named = true;
        break;
      }
    }
    if (!named) {
      throw ParseError(std::string("map letter '") + letter +
                       "' has no entry in the sidecar");
    }
  }
  if (!map.border_closed()) {
    throw ParseError("map border is not obstacle-closed: " + ascii_file.string());
  }
  for (const auto& [name, pose] : map.named_locations()) {
    if (!map.free_at(pose.x, pose.y)) {
      throw ParseError("named location '" + name + "' lies on an obstacle cell");
    }
  }
  return map;
}

}  // namespace btverify
