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

#include "btverify/monitor.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "btverify/errors.hpp"
#include "btverify/trace.hpp"

namespace btverify {

namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<ConnectionId> MonitorSpec::hooked_connections() const {
  std::vector<ConnectionId> out;
  for (const auto& sub : subscriptions) {
    bool seen = false;
    for (const auto& c : out) {
      if (c == sub.connection) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      out.push_back(sub.connection);
    }
  }
  return out;
}

MonitorSpec load_monitor(const std::filesystem::path& manifest) {
  json j;
  {
    std::ifstream in(manifest);
    if (!in) {
      throw ConfigError("cannot open monitor manifest: " + manifest.string());
    }
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ParseError("monitor manifest " + manifest.string() + ": " + e.what());
    }
  }

  MonitorSpec spec;
  try {
    spec.name = j.at("name").get<std::string>();
    const auto chart_path = manifest.parent_path() / j.at("chart").get<std::string>();
    spec.chart = parse_scxml(read_file(chart_path));
    for (const auto& s : j.value("failure_states", std::vector<std::string>{})) {
      if (!spec.chart.has_state(s)) {
        throw ParseError("monitor '" + spec.name + "': failure state '" + s +
                         "' is not in the chart");
      }
      spec.failure_states.insert(s);
    }
    if (!j.contains("subscriptions") || !j["subscriptions"].is_array() ||
        j["subscriptions"].empty()) {
      throw ParseError("monitor '" + spec.name + "': subscriptions must be nonempty");
    }
    for (const auto& sub_json : j["subscriptions"]) {
      MonitorSubscription sub;
      sub.connection =
          ConnectionId::from_string(sub_json.at("connection").get<std::string>());
      if (sub_json.contains("direction")) {
        const std::string d = sub_json["direction"].get<std::string>();
        if (d == "request") {
          sub.direction = Direction::Request;
        } else if (d == "reply") {
          sub.direction = Direction::Reply;
        } else {
          throw ParseError("monitor '" + spec.name + "': bad direction '" + d + "'");
        }
      }
      if (sub_json.contains("procedure")) {
        sub.procedure = sub_json["procedure"].get<std::string>();
      }
      sub.include_faults = sub_json.value("include_faults", false);
      sub.event = sub_json.at("event").get<std::string>();
      if (sub.event.empty()) {
        throw ParseError("monitor '" + spec.name + "': subscription event is empty");
      }
      if (sub_json.contains("fields")) {
        sub.fields = sub_json["fields"].get<std::vector<std::string>>();
      }
      spec.subscriptions.push_back(std::move(sub));
    }
    if (j.contains("response_bound")) {
      const auto& rb = j["response_bound"];
      ResponseBound bound;
      bound.state = rb.at("state").get<std::string>();
      bound.count_event = rb.at("count_event").get<std::string>();
      bound.max_events = rb.value("max_events", 50);
      bound.timeout_event = rb.at("timeout_event").get<std::string>();
      if (!spec.chart.has_state(bound.state)) {
        throw ParseError("monitor '" + spec.name + "': response_bound state '" +
                         bound.state + "' is not in the chart");
      }
      if (bound.max_events <= 0) {
        throw ParseError("monitor '" + spec.name + "': max_events must be positive");
      }
      spec.response_bound = std::move(bound);
    }
  } catch (const json::exception& e) {
    throw ParseError("monitor manifest " + manifest.string() + ": " + e.what());
  }
  return spec;
}

std::string verdict_to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["monitor"] = v.monitor;
  j["state"] = v.state;
  j["violated"] = v.violated;
  j["seq"] = v.seq;
  j["t"] = v.t;
  j["witness"] = nlohmann::ordered_json::parse(message_to_json(v.witness));
  return j.dump();
}

MonitorInstance::MonitorInstance(MonitorSpec spec)
    : spec_(std::move(spec)), instance_(spec_.chart) {}

std::optional<Verdict> MonitorInstance::deliver_and_judge(const Event& event,
                                                          const Message& m) {
  const TransitionReport report = instance_.deliver(event);
  if (report.fired) {
    history_.push_back({event.name, report.from, report.to, m.seq});
  }

  std::optional<Verdict> verdict;
  if (!violated_ && spec_.failure_states.count(instance_.state()) != 0) {
    violated_ = true;
    Verdict v;
    v.monitor = spec_.name;
    v.state = instance_.state();
    v.violated = true;
    v.seq = m.seq;
    v.t = m.t;
    v.witness = m;
    first_verdict_ = v;
    verdict = std::move(v);
  }

  if (spec_.response_bound.has_value()) {
    const ResponseBound& rb = *spec_.response_bound;
    const bool entered_bound_state =
        report.fired && report.to == rb.state && report.from != rb.state;
    if (entered_bound_state) {
      // The triggering event does not count against the bound.
      bound_count_ = 0;
    } else if (instance_.state() == rb.state && event.name == rb.count_event) {
      ++bound_count_;
      if (bound_count_ >= rb.max_events) {
        bound_count_ = 0;
        std::optional<Verdict> timeout_verdict =
            deliver_and_judge(Event{rb.timeout_event, {}}, m);
        if (timeout_verdict.has_value() && !verdict.has_value()) {
          verdict = std::move(timeout_verdict);
        }
      }
    }
  }
  return verdict;
}

std::optional<Verdict> MonitorInstance::feed(const Message& m) {
  for (const auto& sub : spec_.subscriptions) {
    if (sub.connection != m.connection) continue;
    if (sub.direction.has_value() && *sub.direction != m.direction) continue;
    if (sub.procedure.has_value() && *sub.procedure != m.procedure) continue;
    if (m.fault && !sub.include_faults) continue;

    Event event;
    event.name = sub.event;
    if (sub.fields.empty()) {
      event.payload = m.payload;
    } else {
      for (const auto& field : sub.fields) {
        if (auto it = m.payload.find(field); it != m.payload.end()) {
          event.payload[field] = it->second;
        }
      }
    }
    return deliver_and_judge(event, m);
  }
  return std::nullopt;  // unmatched traffic is ignored by design
}

std::vector<Verdict> check_trace(std::istream& trace, const MonitorSpec& spec) {
  MonitorInstance instance(spec);
  std::vector<Verdict> verdicts;
  for_each_trace_message(trace, [&](const Message& m) {
    if (auto v = instance.feed(m); v.has_value()) {
      verdicts.push_back(std::move(*v));
    }
  });
  return verdicts;
}

std::vector<Verdict> check_trace_file(const std::filesystem::path& trace,
                                      const MonitorSpec& spec) {
  std::ifstream in(trace);
  if (!in) {
    throw ConfigError("cannot open trace file: " + trace.string());
  }
  return check_trace(in, spec);
}

}  // namespace btverify
