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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "btverify/errors.hpp"
#include "btverify/trace.hpp"

using namespace btverify;

namespace {

std::filesystem::path share(const std::string& rel) {
  return std::filesystem::path(BTVERIFY_SHARE_DIR) / rel;
}

Message msg(const std::string& connection, Direction dir, const std::string& procedure,
            Payload payload, std::uint64_t seq, double t = 0.0) {
  Message m;
  m.connection = ConnectionId::from_string(connection);
  m.direction = dir;
  m.procedure = procedure;
  m.payload = std::move(payload);
  m.seq = seq;
  m.t = t;
  return m;
}

// A battery request/reply pair on the monitored connection.
void feed_battery_cycle(MonitorInstance& monitor, double level, std::uint64_t seq,
                        std::vector<Verdict>& verdicts) {
  if (auto v = monitor.feed(msg("BatteryLevelAbove30->battery", Direction::Request,
                                "level", {}, seq))) {
    verdicts.push_back(*v);
  }
  if (auto v = monitor.feed(msg("BatteryLevelAbove30->battery", Direction::Reply,
                                "level", {{"level", level}}, seq))) {
    verdicts.push_back(*v);
  }
}

}  // namespace

TEST_CASE("load: battery safety monitor fixture") {
  const MonitorSpec spec = load_monitor(share("monitors/battery_safety.json"));
  CHECK(spec.name == "battery_safety");
  CHECK(spec.chart.states == std::vector<std::string>{"idle", "get", "failure"});
  CHECK(spec.failure_states == std::set<std::string>{"failure"});
  CHECK(spec.subscriptions.size() == 2);
  CHECK(spec.hooked_connections().size() == 1);
  CHECK_FALSE(spec.response_bound.has_value());
}

TEST_CASE("load: recharge response monitor fixture") {
  const MonitorSpec spec = load_monitor(share("monitors/recharge_response.json"));
  CHECK(spec.name == "recharge_response");
  REQUIRE(spec.response_bound.has_value());
  CHECK(spec.response_bound->state == "awaiting");
  CHECK(spec.response_bound->max_events == 50);
  CHECK(spec.hooked_connections().size() == 3);
}

TEST_CASE("load: empty subscriptions are rejected") {
  const auto dir = std::filesystem::temp_directory_path() / "btverify_monitor_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream chart(dir / "c.scxml");
    chart << "<scxml initial=\"a\"><state id=\"a\"/></scxml>";
    std::ofstream manifest(dir / "m.json");
    manifest << R"({"name": "m", "chart": "c.scxml", "subscriptions": []})";
  }
  CHECK_THROWS_AS(load_monitor(dir / "m.json"), ParseError);
}

TEST_CASE("load: failure state must exist in the chart") {
  const auto dir = std::filesystem::temp_directory_path() / "btverify_monitor_test2";
  std::filesystem::create_directories(dir);
  {
    std::ofstream chart(dir / "c.scxml");
    chart << "<scxml initial=\"a\"><state id=\"a\"/></scxml>";
    std::ofstream manifest(dir / "m.json");
    manifest << R"({"name": "m", "chart": "c.scxml", "failure_states": ["boom"],
      "subscriptions": [{"connection": "a->b", "event": "e"}]})";
  }
  CHECK_THROWS_AS(load_monitor(dir / "m.json"), ParseError);
}

TEST_CASE("safety monitor: healthy replies cycle idle->get->idle") {
  MonitorInstance monitor(load_monitor(share("monitors/battery_safety.json")));
  std::vector<Verdict> verdicts;
  feed_battery_cycle(monitor, 50.0, 1, verdicts);
  CHECK(verdicts.empty());
  CHECK(monitor.state() == "idle");
  REQUIRE(monitor.history().size() == 2);
  CHECK(monitor.history()[0].to == "get");
  CHECK(monitor.history()[1].to == "idle");
}

TEST_CASE("safety monitor: a low reply latches a single verdict") {
  MonitorInstance monitor(load_monitor(share("monitors/battery_safety.json")));
  std::vector<Verdict> verdicts;
  feed_battery_cycle(monitor, 60.0, 1, verdicts);
  feed_battery_cycle(monitor, 10.0, 2, verdicts);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].monitor == "battery_safety");
  CHECK(verdicts[0].state == "failure");
  CHECK(verdicts[0].violated);
  CHECK(verdicts[0].seq == 2);
  CHECK(std::get<double>(verdicts[0].witness.payload.at("level")) == 10.0);

  // Latched: the monitor stays violated, no further verdicts.
  feed_battery_cycle(monitor, 5.0, 3, verdicts);
  CHECK(verdicts.size() == 1);
  CHECK(monitor.violated());
  CHECK(monitor.state() == "failure");
}

TEST_CASE("safety monitor: boundary is at-or-below 20") {
  MonitorInstance monitor(load_monitor(share("monitors/battery_safety.json")));
  std::vector<Verdict> verdicts;
  feed_battery_cycle(monitor, 20.01, 1, verdicts);
  CHECK(verdicts.empty());
  feed_battery_cycle(monitor, 20.0, 2, verdicts);
  CHECK(verdicts.size() == 1);
}

TEST_CASE("safety monitor: unrelated traffic is ignored") {
  MonitorInstance monitor(load_monitor(share("monitors/battery_safety.json")));
  CHECK_FALSE(monitor.feed(msg("runner->localization", Direction::Reply,
                               "getCurrentPosition", {{"x", 1.0}}, 9))
                  .has_value());
  CHECK_FALSE(monitor.feed(msg("BatteryLevelAbove30->battery", Direction::Reply,
                               "charging_status", {{"charging", false}}, 10))
                  .has_value());
  CHECK(monitor.state() == "idle");
}

TEST_CASE("response monitor: missing recharge goto violates at the bound") {
  MonitorInstance monitor(load_monitor(share("monitors/recharge_response.json")));
  std::vector<Verdict> verdicts;
  auto feed = [&](Message m) {
    if (auto v = monitor.feed(std::move(m))) verdicts.push_back(*v);
  };

  feed(msg("GotoDestination->navigation", Direction::Request,
           "gotoTargetByLocationName", {{"name", std::string("destination")}}, 1));
  CHECK(monitor.state() == "nav_dest");

  feed(msg("BatteryLevelAbove30->battery", Direction::Reply, "level",
           {{"level", 25.0}}, 2));
  CHECK(monitor.state() == "awaiting");

  for (int i = 0; i < 49; ++i) {
    feed(msg("BatteryLevelAbove30->battery", Direction::Reply, "level",
             {{"level", 24.0}}, 3 + static_cast<std::uint64_t>(i)));
    CHECK(verdicts.empty());
  }
  feed(msg("BatteryLevelAbove30->battery", Direction::Reply, "level",
           {{"level", 23.0}}, 60));
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].monitor == "recharge_response");
  CHECK(verdicts[0].seq == 60);
  CHECK(monitor.state() == "failure");
}

TEST_CASE("response monitor: recharge goto within the bound satisfies it") {
  MonitorInstance monitor(load_monitor(share("monitors/recharge_response.json")));
  std::vector<Verdict> verdicts;
  auto feed = [&](Message m) {
    if (auto v = monitor.feed(std::move(m))) verdicts.push_back(*v);
  };

  feed(msg("GotoDestination->navigation", Direction::Request,
           "gotoTargetByLocationName", {{"name", std::string("destination")}}, 1));
  feed(msg("BatteryLevelAbove30->battery", Direction::Reply, "level",
           {{"level", 28.0}}, 2));
  CHECK(monitor.state() == "awaiting");
  feed(msg("GotoChargingStation->navigation", Direction::Request,
           "gotoTargetByLocationName", {{"name", std::string("charging_station")}},
           1));
  CHECK(monitor.state() == "idle");
  CHECK(verdicts.empty());

  // Destination reached later: nav_dest disarms.
  feed(msg("GotoDestination->navigation", Direction::Request,
           "gotoTargetByLocationName", {{"name", std::string("destination")}}, 2));
  CHECK(monitor.state() == "nav_dest");
  feed(msg("GotoDestination->navigation", Direction::Reply, "getNavigationStatus",
           {{"status", std::string("reached")}}, 3));
  CHECK(monitor.state() == "idle");
}

TEST_CASE("live/offline equivalence on a synthetic trace") {
  const MonitorSpec spec = load_monitor(share("monitors/battery_safety.json"));

  std::vector<Message> messages;
  std::uint64_t seq = 1;
  for (double level : {80.0, 50.0, 31.0, 18.0, 12.0}) {
    messages.push_back(msg("BatteryLevelAbove30->battery", Direction::Request, "level",
                           {}, seq, static_cast<double>(seq)));
    messages.push_back(msg("BatteryLevelAbove30->battery", Direction::Reply, "level",
                           {{"level", level}}, seq, static_cast<double>(seq)));
    ++seq;
  }
  // Interleave unrelated traffic.
  messages.push_back(msg("runner->localization", Direction::Reply,
                         "getCurrentPosition", {{"x", 3.0}, {"y", 4.0}}, 77, 5.0));

  MonitorInstance live(spec);
  std::vector<std::string> live_verdicts;
  std::ostringstream trace_text;
  for (const Message& m : messages) {
    trace_text << message_to_json(m) << '\n';
    if (auto v = live.feed(m)) live_verdicts.push_back(verdict_to_json(*v));
  }

  std::istringstream replay(trace_text.str());
  std::vector<std::string> offline_verdicts;
  for (const Verdict& v : check_trace(replay, spec)) {
    offline_verdicts.push_back(verdict_to_json(v));
  }
  REQUIRE(live_verdicts.size() == 1);
  CHECK(live_verdicts == offline_verdicts);
}

TEST_CASE("check_trace: malformed lines are parse errors") {
  const MonitorSpec spec = load_monitor(share("monitors/battery_safety.json"));
  std::istringstream broken("this is not json\n");
  CHECK_THROWS_AS(check_trace(broken, spec), ParseError);

  std::istringstream truncated(R"({"t":1,"connection":"a->b"})"
                               "\n");
  CHECK_THROWS_AS(check_trace(truncated, spec), ParseError);
}

TEST_CASE("subscription field lists restrict the extracted payload") {
  const auto dir = std::filesystem::temp_directory_path() / "btverify_monitor_test3";
  std::filesystem::create_directories(dir);
  {
    std::ofstream chart(dir / "c.scxml");
    chart << R"(<scxml initial="idle">
      <state id="idle"><transition event="pose" cond="x &gt; 5" target="east"/></state>
      <state id="east"/>
    </scxml>)";
    std::ofstream manifest(dir / "m.json");
    manifest << R"({"name": "fields", "chart": "c.scxml",
      "subscriptions": [{"connection": "runner->localization",
                         "direction": "reply", "event": "pose",
                         "fields": ["x"]}]})";
  }
  MonitorInstance monitor(load_monitor(dir / "m.json"));
  monitor.feed(msg("runner->localization", Direction::Reply, "getCurrentPosition",
                   {{"x", 7.0}, {"y", 2.0}, {"theta", 0.1}}, 1));
  CHECK(monitor.state() == "east");
  REQUIRE(monitor.history().size() == 1);
}

TEST_CASE("trace round-trip preserves messages") {
  const Message original = msg("GotoDestination->navigation", Direction::Request,
                               "gotoTargetByLocationName",
                               {{"name", std::string("destination")}, {"speed", 0.8},
                                {"urgent", true}},
                               42, 7.0);
  const Message parsed = message_from_json(message_to_json(original));
  CHECK(parsed.connection == original.connection);
  CHECK(parsed.direction == original.direction);
  CHECK(parsed.procedure == original.procedure);
  CHECK(parsed.payload == original.payload);
  CHECK(parsed.seq == original.seq);
  CHECK(parsed.t == original.t);
  CHECK(parsed.fault == original.fault);
}
