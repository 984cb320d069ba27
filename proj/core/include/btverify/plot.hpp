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

#ifndef BTVERIFY_PLOT_HPP_
#define BTVERIFY_PLOT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "btverify/bus.hpp"

namespace btverify {

/// Renders a two-panel SVG from a recorded trace: the robot path (from the
/// per-tick localization replies) and the battery level over time (from
/// the battery level replies), with the 30% and 20% thresholds drawn and
/// the first reading at or below 20% marked. An empty trace produces
/// empty axes.
std::string render_trace_svg(const std::vector<Message>& trace);

void write_trace_svg(const std::filesystem::path& trace_file,
                     const std::filesystem::path& out_svg);

}  // namespace btverify

#endif  // BTVERIFY_PLOT_HPP_
