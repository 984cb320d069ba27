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

#include "btverify/behavior_tree.hpp"

#include <thread>
#include <utility>

#include <spdlog/spdlog.h>

#include "btverify/errors.hpp"
#include "xml_util.hpp"

namespace btverify {

std::string_view to_string(TickStatus s) {
  switch (s) {
    case TickStatus::Success: return "success";
    case TickStatus::Failure: return "failure";
    case TickStatus::Running: return "running";
  }
  return "invalid";
}

TickStatus tick_status_from_string(std::string_view s) {
  if (s == "success") return TickStatus::Success;
  if (s == "failure") return TickStatus::Failure;
  if (s == "running") return TickStatus::Running;
  throw ParseError("unknown tick status '" + std::string(s) + "'");
}

std::string_view to_string(BTNode::Kind k) {
  switch (k) {
    case BTNode::Kind::Sequence: return "Sequence";
    case BTNode::Kind::Fallback: return "Fallback";
    case BTNode::Kind::Action: return "Action";
    case BTNode::Kind::Condition: return "Condition";
  }
  return "invalid";
}

std::string_view to_string(TickEventKind k) {
  switch (k) {
    case TickEventKind::TickSent: return "tick_sent";
    case TickEventKind::StatusReturned: return "status_returned";
    case TickEventKind::HaltSent: return "halt_sent";
  }
  return "invalid";
}

namespace {

using internal::XmlElement;

void warn_extra_attributes(const XmlElement& e,
                           std::initializer_list<const char*> known) {
  for (const auto& [key, value] : e.attributes) {
    bool is_known = false;
    for (const char* k : known) {
      if (key == k) {
        is_known = true;
        break;
      }
    }
    if (!is_known) {
      spdlog::warn("ignoring attribute '{}' on <{}>", key, e.name);
    }
  }
}

BTNode build_node(const XmlElement& e) {
  BTNode node;
  if (e.name == "Sequence" || e.name == "Fallback") {
    node.kind = e.name == "Sequence" ? BTNode::Kind::Sequence
                                     : BTNode::Kind::Fallback;
    warn_extra_attributes(e, {});
    if (e.children.empty()) {
      throw ParseError("composite with no children: <" + e.name + ">");
    }
    node.children.reserve(e.children.size());
    for (const auto& child : e.children) {
      node.children.push_back(build_node(child));
    }
  } else if (e.name == "Action" || e.name == "Condition") {
    node.kind = e.name == "Action" ? BTNode::Kind::Action
                                   : BTNode::Kind::Condition;
    warn_extra_attributes(e, {"ID"});
    const std::string* id = e.find_attribute("ID");
    if (id == nullptr || id->empty()) {
      throw ParseError("leaf <" + e.name + "> is missing a nonempty ID attribute");
    }
    node.id = *id;
    if (!e.children.empty()) {
      throw ParseError("leaf <" + e.name + " ID=\"" + node.id +
                       "\"> must not have children");
    }
  } else {
    throw ParseError("unknown behavior tree element <" + e.name + ">");
  }
  return node;
}

}  // namespace

BTNode parse_bt_xml(const std::string& document) {
  const XmlElement root = internal::parse_xml_document(document);
  if (root.name != "root") {
    throw ParseError("expected <root> document element, got <" + root.name + ">");
  }
  const std::string* main_tree = root.find_attribute("main_tree_to_execute");
  if (main_tree == nullptr) {
    throw ParseError("missing main tree: <root> has no main_tree_to_execute attribute");
  }
  for (const auto& child : root.children) {
    if (child.name != "BehaviorTree") {
      throw ParseError("unknown element <" + child.name + "> under <root>");
    }
    const std::string* id = child.find_attribute("ID");
    if (id != nullptr && *id == *main_tree) {
      if (child.children.size() != 1) {
        throw ParseError("BehaviorTree '" + *id + "' must have exactly one root node");
      }
      return build_node(child.children.front());
    }
  }
  throw ParseError("missing main tree: no <BehaviorTree ID=\"" + *main_tree + "\">");
}

namespace {

void validate_node(const BTNode& n, const std::string& path) {
  if (n.is_leaf()) {
    if (n.id.empty()) {
      throw ParseError("leaf at " + path + " has an empty id");
    }
    if (!n.children.empty()) {
      throw ParseError("leaf '" + n.id + "' at " + path + " has children");
    }
  } else {
    if (n.children.empty()) {
      throw ParseError("composite at " + path + " has no children");
    }
    for (size_t i = 0; i < n.children.size(); ++i) {
      validate_node(n.children[i], path + "." + std::to_string(i));
    }
  }
}

}  // namespace

void validate_bt(const BTNode& root) { validate_node(root, "0"); }

TickEngine::TickEngine(BTNode root, LeafExecutor& executor)
    : executor_(&executor) {
  validate_bt(root);
  flatten(root, "0");
  running_.assign(nodes_.size(), false);
}

int TickEngine::flatten(const BTNode& n, const std::string& path) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{n.kind, n.id, path, {}});
  for (size_t i = 0; i < n.children.size(); ++i) {
    const int child = flatten(n.children[i], path + "." + std::to_string(i));
    nodes_[index].children.push_back(child);
  }
  return index;
}

TickStatus TickEngine::tick_once() {
  ++cycle_;
  return tick_node(0);
}

TickStatus TickEngine::tick_node(int index) {
  Node& node = nodes_[index];
  trace_.push_back({cycle_, node.path, node.id, TickEventKind::TickSent, {}});

  if (node.kind == BTNode::Kind::Action || node.kind == BTNode::Kind::Condition) {
    const TickStatus status = executor_->tick_leaf(node.id);
    running_[index] = status == TickStatus::Running;
    trace_.push_back({cycle_, node.path, node.id, TickEventKind::StatusReturned, status});
    return status;
  }

  const bool is_sequence = node.kind == BTNode::Kind::Sequence;
  const size_t child_count = node.children.size();
  TickStatus result = is_sequence ? TickStatus::Success : TickStatus::Failure;
  for (size_t i = 0; i < child_count; ++i) {
    const TickStatus status = tick_node(node.children[i]);
    const bool advances =
        is_sequence ? status == TickStatus::Success : status == TickStatus::Failure;
    if (!advances) {
      // Children to the right lose their ticks this cycle; abort any of
      // them still running before anything else executes.
      for (size_t j = i + 1; j < child_count; ++j) {
        halt_subtree(node.children[j]);
      }
      result = status;
      break;
    }
  }
  trace_.push_back({cycle_, node.path, node.id, TickEventKind::StatusReturned, result});
  return result;
}

void TickEngine::halt_subtree(int index) {
  const Node& node = nodes_[index];
  if (node.kind == BTNode::Kind::Action || node.kind == BTNode::Kind::Condition) {
    if (running_[index]) {
      executor_->halt_leaf(node.id);
      running_[index] = false;
      trace_.push_back({cycle_, node.path, node.id, TickEventKind::HaltSent, {}});
    }
    return;
  }
  for (int child : node.children) {
    halt_subtree(child);
  }
}

void TickEngine::halt_running() { halt_subtree(0); }

std::vector<std::string> TickEngine::last_cycle_ticked_leaves() const {
  std::vector<std::string> out;
  for (const auto& event : trace_) {
    if (event.cycle == cycle_ && event.kind == TickEventKind::TickSent &&
        !event.leaf_id.empty()) {
      out.push_back(event.leaf_id);
    }
  }
  return out;
}

TickStatus tick_once(const BTNode& root, LeafExecutor& executor) {
  TickEngine engine(root, executor);
  return engine.tick_once();
}

void SteadyClock::sleep(std::chrono::duration<double> d) {
  std::this_thread::sleep_for(d);
}

TickTrace run_engine(BTNode root, LeafExecutor& executor,
                     const RunEngineOptions& options, const StopCondition& stop) {
  if (options.frequency_hz <= 0.0) {
    throw ConfigError("tick frequency must be positive");
  }
  TickEngine engine(std::move(root), executor);
  const std::chrono::duration<double> period(1.0 / options.frequency_hz);
  for (;;) {
    const TickStatus status = engine.tick_once();
    if (stop(status, engine.cycles())) {
      break;
    }
    if (options.clock != nullptr) {
      options.clock->sleep(period);
    }
  }
  return engine.trace();
}

}  // namespace btverify
