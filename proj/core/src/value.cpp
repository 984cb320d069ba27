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

#include "btverify/value.hpp"

#include <cmath>
#include <cstdio>

namespace btverify {

std::string to_string(const Scalar& v) {
  if (const bool* b = std::get_if<bool>(&v)) {
    return *b ? "true" : "false";
  }
  if (const double* d = std::get_if<double>(&v)) {
    if (*d == std::floor(*d) && std::abs(*d) < 1e15) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.0f", *d);
      return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", *d);
    return buf;
  }
  return std::get<std::string>(v);
}

}  // namespace btverify
