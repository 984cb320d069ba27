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

#ifndef BTVERIFY_VALUE_HPP_
#define BTVERIFY_VALUE_HPP_

#include <map>
#include <string>
#include <variant>

namespace btverify {

/// Scalar value carried in message payloads, guard expressions and chart
/// variables. Numbers are always double; integers round-trip exactly up
/// to 2^53 which is far beyond anything the toolkit moves around.
using Scalar = std::variant<bool, double, std::string>;

/// Flat field -> scalar map; the payload of every bus message and event.
/// std::map keeps fields ordered so serialized payloads are deterministic.
using Payload = std::map<std::string, Scalar>;

inline bool is_bool(const Scalar& v) { return std::holds_alternative<bool>(v); }
inline bool is_number(const Scalar& v) { return std::holds_alternative<double>(v); }
inline bool is_string(const Scalar& v) { return std::holds_alternative<std::string>(v); }

std::string to_string(const Scalar& v);

}  // namespace btverify

#endif  // BTVERIFY_VALUE_HPP_
