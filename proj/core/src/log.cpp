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

#include "btverify/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/spdlog.h>

namespace btverify {

void init_logging_from_env() {
  spdlog::set_level(spdlog::level::warn);
  const char* level = std::getenv("BTVERIFY_LOG_LEVEL");
  if (level == nullptr) {
    return;
  }
  const std::string value(level);
  if (value == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (value == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (value == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (value == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (value == "trace") {
    spdlog::set_level(spdlog::level::trace);
  } else {
    spdlog::warn("unknown BTVERIFY_LOG_LEVEL '{}', using warn", value);
  }
}

}  // namespace btverify
