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

#ifndef BTVERIFY_ERRORS_HPP_
#define BTVERIFY_ERRORS_HPP_

#include <stdexcept>

namespace btverify {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-subset input (BT XML, SCXML, map, trace, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario/CLI configuration, missing files, bad references.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Broken wiring: unknown endpoint, unresolvable leaf id, unknown hook.
class WiringError : public Error {
 public:
  using Error::Error;
};

/// A request handler faulted; carries the handler's message.
class QueryError : public Error {
 public:
  using Error::Error;
};

/// Contract violation between components (halt on a Condition skill,
/// duplicate endpoint registration, ...).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Event delivery failed: guard referenced a missing payload field or
/// compared incompatible types.
class DeliveryError : public Error {
 public:
  using Error::Error;
};

}  // namespace btverify

#endif  // BTVERIFY_ERRORS_HPP_
