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

#include "btverify/plot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "btverify/errors.hpp"
#include "btverify/trace.hpp"

namespace btverify {

namespace {

struct Series2D {
  std::vector<double> x;
  std::vector<double> y;
};

double payload_number(const Payload& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  if (it == p.end() || !is_number(it->second)) return fallback;
  return std::get<double>(it->second);
}

// Maps data coordinates into an SVG viewport rectangle.
struct Scale {
  double x0, x1, y0, y1;          // data range
  double px, py, pw, ph;          // pixel rectangle
  bool flip_y = false;

  double sx(double x) const {
    const double span = x1 - x0 == 0.0 ? 1.0 : x1 - x0;
    return px + (x - x0) / span * pw;
  }
  double sy(double y) const {
    const double span = y1 - y0 == 0.0 ? 1.0 : y1 - y0;
    const double f = (y - y0) / span;
    return flip_y ? py + f * ph : py + (1.0 - f) * ph;
  }
};

void polyline(std::ostringstream& svg, const Scale& s, const Series2D& series,
              const std::string& stroke) {
  if (series.x.empty()) return;
  svg << "<polyline fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < series.x.size(); ++i) {
    svg << s.sx(series.x[i]) << ',' << s.sy(series.y[i]) << ' ';
  }
  svg << "\"/>\n";
}

void axes(std::ostringstream& svg, const Scale& s, const std::string& title) {
  svg << "<rect x=\"" << s.px << "\" y=\"" << s.py << "\" width=\"" << s.pw
      << "\" height=\"" << s.ph
      << "\" fill=\"white\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << s.px + 4 << "\" y=\"" << s.py - 6
      << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">" << title
      << "</text>\n";
}

}  // namespace

std::string render_trace_svg(const std::vector<Message>& trace) {
  Series2D path;
  Series2D battery;
  for (const Message& m : trace) {
    if (m.direction != Direction::Reply || m.fault) continue;
    if (m.procedure == "getCurrentPosition") {
      path.x.push_back(payload_number(m.payload, "x", 0.0));
      path.y.push_back(payload_number(m.payload, "y", 0.0));
    } else if (m.procedure == "level" && m.connection.server == "battery") {
      battery.x.push_back(m.t);
      battery.y.push_back(payload_number(m.payload, "level", 0.0));
    }
  }

  const double width = 860, height = 400;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#f6f6f6\"/>\n";

  // Left panel: robot path in map coordinates (y grows downward, as in the
  // ASCII map).
  Scale map_scale{0, 1, 0, 1, 40, 40, 360, 320, true};
  if (!path.x.empty()) {
    const auto [minx, maxx] = std::minmax_element(path.x.begin(), path.x.end());
    const auto [miny, maxy] = std::minmax_element(path.y.begin(), path.y.end());
    map_scale.x0 = *minx - 1;
    map_scale.x1 = *maxx + 1;
    map_scale.y0 = *miny - 1;
    map_scale.y1 = *maxy + 1;
  }
  axes(svg, map_scale, "robot path (cells)");
  polyline(svg, map_scale, path, "#2a7d2a");
  if (!path.x.empty()) {
    svg << "<circle cx=\"" << map_scale.sx(path.x.front()) << "\" cy=\""
        << map_scale.sy(path.y.front()) << "\" r=\"4\" fill=\"#2a7d2a\"/>\n";
    svg << "<rect x=\"" << map_scale.sx(path.x.back()) - 3 << "\" y=\""
        << map_scale.sy(path.y.back()) - 3
        << "\" width=\"6\" height=\"6\" fill=\"#b33\"/>\n";
  }

  // Right panel: battery level against time with the 30/20 thresholds.
  Scale bat_scale{0, 1, 0, 100, 460, 40, 360, 320, false};
  if (!battery.x.empty()) {
    bat_scale.x0 = battery.x.front();
    bat_scale.x1 = std::max(battery.x.back(), battery.x.front() + 1);
  }
  axes(svg, bat_scale, "battery level (%)");
  for (const auto& [threshold, color] :
       {std::pair{30.0, "#c90"}, std::pair{20.0, "#c33"}}) {
    svg << "<line x1=\"" << bat_scale.px << "\" y1=\"" << bat_scale.sy(threshold)
        << "\" x2=\"" << bat_scale.px + bat_scale.pw << "\" y2=\""
        << bat_scale.sy(threshold) << "\" stroke=\"" << color
        << "\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
  }
  polyline(svg, bat_scale, battery, "#226");
  for (size_t i = 0; i < battery.x.size(); ++i) {
    if (battery.y[i] <= 20.0) {
      svg << "<circle cx=\"" << bat_scale.sx(battery.x[i]) << "\" cy=\""
          << bat_scale.sy(battery.y[i])
          << "\" r=\"5\" fill=\"none\" stroke=\"#c33\" stroke-width=\"2\"/>\n";
      svg << "<text x=\"" << bat_scale.sx(battery.x[i]) + 8 << "\" y=\""
          << bat_scale.sy(battery.y[i]) - 8
          << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c33\">"
          << "level &#8804; 20</text>\n";
      break;
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

void write_trace_svg(const std::filesystem::path& trace_file,
                     const std::filesystem::path& out_svg) {
  const std::vector<Message> trace = read_trace_file(trace_file);
  std::ofstream out(out_svg);
  if (!out) {
    throw ConfigError("cannot open SVG output file: " + out_svg.string());
  }
  out << render_trace_svg(trace);
}

}  // namespace btverify
