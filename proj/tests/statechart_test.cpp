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

#include "btverify/statechart.hpp"

#include <fstream>
#include <sstream>

#include <doctest.h>

#include "btverify/errors.hpp"

using namespace btverify;

namespace {

std::string fixture_text(const std::string& rel) {
  std::ifstream in(std::string(BTVERIFY_SHARE_DIR) + "/" + rel);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", rel);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

constexpr const char* kTwoState = R"(<scxml initial="idle">
  <state id="idle"><transition event="request" target="get"/></state>
  <state id="get"/>
</scxml>)";

}  // namespace

TEST_CASE("parse: two-state chart") {
  const StateChart chart = parse_scxml(kTwoState);
  CHECK(chart.states == std::vector<std::string>{"idle", "get"});
  CHECK(chart.initial == "idle");
  REQUIRE(chart.transitions.size() == 1);
  CHECK(chart.transitions[0].source == "idle");
  CHECK(chart.transitions[0].event == "request");
  CHECK(chart.transitions[0].target == "get");
  CHECK_FALSE(chart.transitions[0].guard.has_value());
}

TEST_CASE("parse: battery safety monitor fixture") {
  const StateChart chart = parse_scxml(fixture_text("monitors/battery_safety.scxml"));
  CHECK(chart.states == std::vector<std::string>{"idle", "get", "failure"});
  CHECK(chart.initial == "idle");
  CHECK(chart.transitions.size() == 3);
}

TEST_CASE("parse: datamodel variables") {
  const StateChart chart = parse_scxml(R"(<scxml initial="a">
    <datamodel>
      <data id="threshold" expr="30"/>
      <data id="label" expr="'low'"/>
      <data id="armed" expr="true"/>
    </datamodel>
    <state id="a"/>
  </scxml>)");
  CHECK(chart.variables.at("threshold") == Scalar{30.0});
  CHECK(chart.variables.at("label") == Scalar{std::string("low")});
  CHECK(chart.variables.at("armed") == Scalar{true});
}

TEST_CASE("parse: errors") {
  // Unknown element.
  CHECK_THROWS_AS(parse_scxml(R"(<scxml initial="a"><state id="a"/><weird/></scxml>)"),
                  ParseError);
  // Dangling target.
  CHECK_THROWS_AS(parse_scxml(R"(<scxml initial="a">
    <state id="a"><transition event="e" target="ghost"/></state>
  </scxml>)"),
                  ParseError);
  // Initial state not declared.
  CHECK_THROWS_AS(parse_scxml(R"(<scxml initial="nope"><state id="a"/></scxml>)"),
                  ParseError);
  // Unparsable cond.
  CHECK_THROWS_AS(parse_scxml(R"(<scxml initial="a">
    <state id="a"><transition event="e" cond="level >" target="a"/></state>
  </scxml>)"),
                  ParseError);
  // Duplicate state ids.
  CHECK_THROWS_AS(
      parse_scxml(R"(<scxml initial="a"><state id="a"/><state id="a"/></scxml>)"),
      ParseError);
}

TEST_CASE("guards: grammar and evaluation") {
  const Payload payload{{"level", 10.0}, {"status", std::string("reached")},
                        {"ok", true}};
  const Payload vars{{"threshold", 20.0}};

  CHECK(GuardExpr::parse("level <= 20").evaluate(payload, {}));
  CHECK_FALSE(GuardExpr::parse("level > 20").evaluate(payload, {}));
  CHECK(GuardExpr::parse("level <= threshold").evaluate(payload, vars));
  CHECK(GuardExpr::parse("status == 'reached'").evaluate(payload, {}));
  CHECK(GuardExpr::parse("status != 'idle'").evaluate(payload, {}));
  CHECK(GuardExpr::parse("ok == true").evaluate(payload, {}));
  CHECK(GuardExpr::parse("!(level > 20) && ok").evaluate(payload, {}));
  CHECK(GuardExpr::parse("level > 20 || status == 'reached'").evaluate(payload, {}));
  CHECK(GuardExpr::parse("level >= -5").evaluate(payload, {}));

  // Payload fields shadow variables.
  CHECK(GuardExpr::parse("level == 10").evaluate(payload, Payload{{"level", 99.0}}));
}

TEST_CASE("guards: missing field is a delivery error, not false") {
  const GuardExpr guard = GuardExpr::parse("voltage < 3");
  CHECK_THROWS_AS(guard.evaluate({{"level", 10.0}}, {}), DeliveryError);
}

TEST_CASE("guards: type mismatches are delivery errors") {
  CHECK_THROWS_AS(GuardExpr::parse("level < 'abc'").evaluate({{"level", 1.0}}, {}),
                  DeliveryError);
  CHECK_THROWS_AS(GuardExpr::parse("ok < true").evaluate({{"ok", false}}, {}),
                  DeliveryError);
  CHECK_THROWS_AS(GuardExpr::parse("level").evaluate({{"level", 1.0}}, {}),
                  DeliveryError);  // not a boolean result
}

TEST_CASE("deliver: first matching transition in document order fires") {
  const StateChart chart = parse_scxml(R"(<scxml initial="get">
    <state id="get">
      <transition event="reply" cond="level &gt; 20" target="idle"/>
      <transition event="reply" cond="level &lt;= 20" target="failure"/>
    </state>
    <state id="idle"/>
    <state id="failure"/>
  </scxml>)");

  ChartInstance ok(chart);
  const TransitionReport r1 = ok.deliver({"reply", {{"level", 50.0}}});
  CHECK(r1.fired);
  CHECK(r1.from == "get");
  CHECK(r1.to == "idle");
  CHECK(ok.state() == "idle");

  ChartInstance bad(chart);
  const TransitionReport r2 = bad.deliver({"reply", {{"level", 10.0}}});
  CHECK(r2.fired);
  CHECK(r2.to == "failure");
}

TEST_CASE("deliver: experiment-style request/reply cycle") {
  const StateChart chart = parse_scxml(fixture_text("monitors/battery_safety.scxml"));
  ChartInstance instance(chart);

  CHECK(instance.deliver({"request", {}}).to == "get");
  CHECK(instance.deliver({"reply", {{"level", 50.0}}}).to == "idle");
  CHECK(instance.deliver({"request", {}}).to == "get");
  CHECK(instance.deliver({"reply", {{"level", 10.0}}}).to == "failure");
}

TEST_CASE("deliver: unmatched events are reported, never an error") {
  ChartInstance instance{parse_scxml(kTwoState)};
  const TransitionReport r = instance.deliver({"unrelated", {}});
  CHECK_FALSE(r.fired);
  CHECK(r.from == "idle");
  CHECK(r.to == "idle");
  CHECK(instance.state() == "idle");
}

TEST_CASE("deliver: determinism") {
  const StateChart chart = parse_scxml(kTwoState);
  for (int i = 0; i < 10; ++i) {
    ChartInstance instance(chart);
    const TransitionReport r = instance.deliver({"request", {}});
    CHECK(r.fired);
    CHECK(r.to == "get");
  }
}

TEST_CASE("instance: variables persist across reset_state") {
  StateChart chart = parse_scxml(R"(<scxml initial="idle">
    <datamodel><data id="threshold" expr="30"/></datamodel>
    <state id="idle">
      <transition event="reply" cond="level &gt; threshold" target="yes"/>
      <transition event="reply" cond="level &lt;= threshold" target="no"/>
    </state>
    <state id="yes"/><state id="no"/>
  </scxml>)");
  ChartInstance instance(chart);
  CHECK(instance.deliver({"reply", {{"level", 25.0}}}).to == "no");

  instance.reset_state();
  instance.set_variable("threshold", 20.0);
  CHECK(instance.deliver({"reply", {{"level", 25.0}}}).to == "yes");

  instance.reset_state();
  CHECK(instance.variables().at("threshold") == Scalar{20.0});
}

TEST_CASE("instance: state always a chart member") {
  const StateChart chart = parse_scxml(kTwoState);
  ChartInstance instance(chart);
  CHECK(chart.has_state(instance.state()));
  instance.deliver({"request", {}});
  CHECK(chart.has_state(instance.state()));
}
