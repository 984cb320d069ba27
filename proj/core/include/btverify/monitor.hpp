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

#ifndef BTVERIFY_MONITOR_HPP_
#define BTVERIFY_MONITOR_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "btverify/bus.hpp"
#include "btverify/statechart.hpp"

namespace btverify {

/// Declarative message -> event extraction: a message matches when its
/// connection equals `connection` and the optional direction/procedure
/// filters agree. Matching messages become chart events named `event`
/// whose payload is the message payload (or the listed fields).
struct MonitorSubscription {
  ConnectionId connection;
  std::optional<Direction> direction;
  std::optional<std::string> procedure;
  bool include_faults = false;
  std::string event;
  std::vector<std::string> fields;  // empty: copy all payload fields
};

/// Finite-trace response bound: while the chart sits in `state`, delivered
/// events named `count_event` are counted; when `max_events` of them pass
/// without leaving the state, `timeout_event` is synthesized. Converts an
/// "eventually" obligation into a checkable bound.
struct ResponseBound {
  std::string state;
  std::string count_event;
  int max_events = 50;
  std::string timeout_event;
};

struct MonitorSpec {
  std::string name;
  StateChart chart;
  std::vector<MonitorSubscription> subscriptions;
  std::set<std::string> failure_states;
  std::optional<ResponseBound> response_bound;

  /// Connections this monitor needs hooked, deduplicated.
  std::vector<ConnectionId> hooked_connections() const;
};

/// Loads a monitor manifest (JSON): name, chart file (relative to the
/// manifest), failure_states, subscriptions, optional response_bound.
/// Throws ParseError on empty subscriptions or states missing from the
/// chart.
MonitorSpec load_monitor(const std::filesystem::path& manifest);

struct Verdict {
  std::string monitor;
  std::string state;
  bool violated = true;
  std::uint64_t seq = 0;  // witness seq
  double t = 0.0;
  Message witness;
};

/// Deterministic single-line JSON rendering; identical for live and
/// offline checking of the same message.
std::string verdict_to_json(const Verdict& v);

struct MonitorTransition {
  std::string event;
  std::string from;
  std::string to;
  std::uint64_t seq = 0;
};

/// A live monitor: feed every intercepted message in bus order. The first
/// entry into a failure state emits a Verdict; the verdict latches but
/// feeding may continue.
class MonitorInstance {
 public:
  explicit MonitorInstance(MonitorSpec spec);

  std::optional<Verdict> feed(const Message& m);

  const MonitorSpec& spec() const { return spec_; }
  const std::string& state() const { return instance_.state(); }
  bool violated() const { return violated_; }
  const std::optional<Verdict>& first_verdict() const { return first_verdict_; }

  /// Fired transitions in delivery order (state sequence evidence).
  const std::vector<MonitorTransition>& history() const { return history_; }

 private:
  std::optional<Verdict> deliver_and_judge(const Event& event, const Message& m);

  MonitorSpec spec_;
  ChartInstance instance_;
  int bound_count_ = 0;
  bool violated_ = false;
  std::optional<Verdict> first_verdict_;
  std::vector<MonitorTransition> history_;
};

/// Offline replay: runs the spec over a recorded trace; verdicts are
/// identical to live feeding of the same message sequence.
std::vector<Verdict> check_trace(std::istream& trace, const MonitorSpec& spec);
std::vector<Verdict> check_trace_file(const std::filesystem::path& trace,
                                      const MonitorSpec& spec);

}  // namespace btverify

#endif  // BTVERIFY_MONITOR_HPP_
