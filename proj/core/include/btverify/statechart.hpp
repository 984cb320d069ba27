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

#ifndef BTVERIFY_STATECHART_HPP_
#define BTVERIFY_STATECHART_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "btverify/value.hpp"

namespace btverify {

/// Parsed guard expression over event payload fields and chart variables.
/// Grammar: comparisons (< <= > >= == !=), && || !, parentheses, numeric
/// and quoted string literals, true/false, identifiers.
class GuardExpr {
 public:
  ~GuardExpr();
  GuardExpr(GuardExpr&&) noexcept;
  GuardExpr& operator=(GuardExpr&&) noexcept;
  GuardExpr(const GuardExpr&);
  GuardExpr& operator=(const GuardExpr&);

  /// Evaluates against payload fields first, then variables. Throws
  /// DeliveryError on unknown identifiers or type-incompatible comparisons.
  bool evaluate(const Payload& payload, const Payload& variables) const;

  const std::string& source() const { return source_; }

  static GuardExpr parse(const std::string& text);  // throws ParseError

  struct Ast;  // implementation detail, defined in statechart.cpp

 private:
  GuardExpr(std::shared_ptr<const Ast> ast, std::string source);

  std::shared_ptr<const Ast> ast_;
  std::string source_;
};

/// Flat named-state machine: an initial state and event-triggered,
/// optionally guarded transitions. Shared by skills and monitors.
struct StateChart {
  struct Transition {
    std::string source;
    std::string event;
    std::optional<GuardExpr> guard;
    std::string target;
  };

  std::vector<std::string> states;       // document order
  std::string initial;
  std::vector<Transition> transitions;   // document order
  Payload variables;                     // initial variable store

  bool has_state(const std::string& id) const;
};

/// Parses the supported SCXML subset:
///
///   <scxml initial="idle">
///     <datamodel> <data id="threshold" expr="30"/> </datamodel>
///     <state id="idle"> <transition event="e" cond="x > 1" target="get"/> </state>
///     ...
///   </scxml>
///
/// Throws ParseError on unknown elements, dangling targets or unparsable
/// cond expressions.
StateChart parse_scxml(const std::string& document);

struct Event {
  std::string name;
  Payload payload;
};

struct TransitionReport {
  bool fired = false;
  std::string from;
  std::string to;  // == from when nothing fired
};

/// A live instance of a chart: current state plus a variable store seeded
/// from the chart. Single-threaded; transferable between threads at rest.
class ChartInstance {
 public:
  explicit ChartInstance(StateChart chart);

  /// Delivers one event: transitions out of the current state matching the
  /// event name are tried in document order and the first passing guard
  /// fires. Unmatched events report fired=false and are never an error.
  TransitionReport deliver(const Event& event);

  const std::string& state() const { return state_; }
  const StateChart& chart() const { return chart_; }

  /// Resets the current state to the chart's initial state. The variable
  /// store is kept as is.
  void reset_state();

  void set_variable(const std::string& name, Scalar value);
  const Payload& variables() const { return variables_; }

 private:
  StateChart chart_;
  std::string state_;
  Payload variables_;
};

}  // namespace btverify

#endif  // BTVERIFY_STATECHART_HPP_
