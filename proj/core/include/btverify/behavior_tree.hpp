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

#ifndef BTVERIFY_BEHAVIOR_TREE_HPP_
#define BTVERIFY_BEHAVIOR_TREE_HPP_

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btverify {

/// Three-valued result a behavior tree node reports to its parent.
enum class TickStatus { Success, Failure, Running };

std::string_view to_string(TickStatus s);
TickStatus tick_status_from_string(std::string_view s);

/// One node of a parsed behavior tree. Sequence/Fallback compose children
/// left to right; Action/Condition are leaves identified by a skill id.
struct BTNode {
  enum class Kind { Sequence, Fallback, Action, Condition };

  Kind kind = Kind::Sequence;
  std::string id;                 // leaf skill id; empty for composites
  std::vector<BTNode> children;   // nonempty for composites, empty for leaves

  bool is_leaf() const { return kind == Kind::Action || kind == Kind::Condition; }
};

std::string_view to_string(BTNode::Kind k);

/// Parses a Groot-style XML document:
///
///   <root main_tree_to_execute="T">
///     <BehaviorTree ID="T">
///       <Sequence> <Condition ID="..."/> <Action ID="..."/> </Sequence>
///     </BehaviorTree>
///   </root>
///
/// Throws ParseError on malformed XML, unknown elements, a missing main
/// tree, childless composites or leaves with children.
BTNode parse_bt_xml(const std::string& document);

/// Structural invariant check used by `validate`; throws ParseError with
/// the offending node path on violation.
void validate_bt(const BTNode& root);

/// Resolves leaf ids to executable skills. tick_leaf blocks until the
/// leaf's status is known; both calls throw WiringError when the id is
/// unknown.
class LeafExecutor {
 public:
  virtual ~LeafExecutor() = default;
  virtual TickStatus tick_leaf(const std::string& leaf_id) = 0;
  virtual void halt_leaf(const std::string& leaf_id) = 0;
};

enum class TickEventKind { TickSent, StatusReturned, HaltSent };

std::string_view to_string(TickEventKind k);

/// One observable engine event, recorded in execution order.
struct TickEvent {
  int cycle = 0;
  std::string path;                  // dotted child-index path, "0" = root
  std::string leaf_id;               // empty for composites
  TickEventKind kind = TickEventKind::TickSent;
  std::optional<TickStatus> status;  // StatusReturned only
};

using TickTrace = std::vector<TickEvent>;

/// Executes one behavior tree with reactive semantics: every cycle the
/// whole tree is re-evaluated from the root; a composite ticks children
/// left to right and stops at the first non-advancing child. A leaf that
/// returned Running and is no longer reached receives halt_leaf exactly
/// once, in document order, at the moment its parent commits to skipping
/// it within the cycle.
class TickEngine {
 public:
  TickEngine(BTNode root, LeafExecutor& executor);

  /// Runs one full tick cycle; returns the root status.
  TickStatus tick_once();

  /// Halts every leaf still marked Running (used on engine shutdown).
  void halt_running();

  int cycles() const { return cycle_; }
  const TickTrace& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

  /// Leaf ids ticked during the most recent cycle, in tick order.
  std::vector<std::string> last_cycle_ticked_leaves() const;

 private:
  struct Node {
    BTNode::Kind kind;
    std::string id;
    std::string path;
    std::vector<int> children;
  };

  int flatten(const BTNode& n, const std::string& path);
  TickStatus tick_node(int index);
  void halt_subtree(int index);

  LeafExecutor* executor_;
  std::vector<Node> nodes_;
  std::vector<bool> running_;  // leaf returned Running, not yet halted
  TickTrace trace_;
  int cycle_ = 0;
};

/// One-shot cycle over a fresh engine (no cross-cycle halt state).
TickStatus tick_once(const BTNode& root, LeafExecutor& executor);

/// Pacing source for run_engine. Tests inject a no-op clock so cadence
/// never affects verdicts.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual void sleep(std::chrono::duration<double> d) = 0;
};

class SteadyClock final : public Clock {
 public:
  void sleep(std::chrono::duration<double> d) override;
};

class NullClock final : public Clock {
 public:
  void sleep(std::chrono::duration<double>) override {}
};

struct RunEngineOptions {
  double frequency_hz = 10.0;
  Clock* clock = nullptr;  // nullptr: no pacing between cycles
};

/// Returning true stops the engine after the current cycle.
using StopCondition = std::function<bool(TickStatus root_status, int cycle)>;

/// Ticks the tree at the given cadence until stop holds. Ticking continues
/// past root Success/Failure; a never-true stop condition loops forever by
/// design. Returns the accumulated trace.
TickTrace run_engine(BTNode root, LeafExecutor& executor,
                     const RunEngineOptions& options, const StopCondition& stop);

}  // namespace btverify

#endif  // BTVERIFY_BEHAVIOR_TREE_HPP_
