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

#include "btverify/toml.hpp"

#include <doctest.h>

#include "btverify/errors.hpp"

using namespace btverify;

TEST_CASE("toml: scalars, comments and tables") {
  const toml::Table t = toml::parse(R"(
# a comment
name = "clean"        # trailing comment
speed = 0.8
ticks = 500
verbose = true
label = 'literal # not a comment'

[sim]
drain_rate = 0.2
)");
  CHECK(t.at("name").as_string() == "clean");
  CHECK(t.at("speed").as_number() == doctest::Approx(0.8));
  CHECK(t.at("ticks").as_int() == 500);
  CHECK(t.at("verbose").as_bool());
  CHECK(t.at("label").as_string() == "literal # not a comment");
  CHECK(t.at("sim").as_table().at("drain_rate").as_number() == doctest::Approx(0.2));
}

TEST_CASE("toml: arrays, including multi-line with trailing comma") {
  const toml::Table t = toml::parse(R"(
plain = [1, 2, 3]
monitors = [
  "a.json",
  "b.json",
]
)");
  REQUIRE(t.at("plain").as_array().size() == 3);
  CHECK(t.at("plain").as_array()[2].as_int() == 3);
  const toml::Array& monitors = t.at("monitors").as_array();
  REQUIRE(monitors.size() == 2);
  CHECK(monitors[1].as_string() == "b.json");
}

TEST_CASE("toml: arrays of tables") {
  const toml::Table t = toml::parse(R"(
[[injections]]
action = "set_battery"
at_tick = 200
level = 10.0

[[injections]]
action = "plug_cable"
on_arrival = "charging_station"
delay_ticks = 20
)");
  const toml::Array& injections = t.at("injections").as_array();
  REQUIRE(injections.size() == 2);
  CHECK(injections[0].as_table().at("action").as_string() == "set_battery");
  CHECK(injections[0].as_table().at("level").as_number() == doctest::Approx(10.0));
  CHECK(injections[1].as_table().at("delay_ticks").as_int() == 20);
}

TEST_CASE("toml: dotted headers nest") {
  const toml::Table t = toml::parse("[a.b]\nx = 1\n");
  CHECK(t.at("a").as_table().at("b").as_table().at("x").as_int() == 1);
}

TEST_CASE("toml: errors carry line numbers") {
  CHECK_THROWS_AS(toml::parse("x = \n"), ParseError);
  CHECK_THROWS_AS(toml::parse("x 1\n"), ParseError);
  CHECK_THROWS_AS(toml::parse("[unclosed\n"), ParseError);
  CHECK_THROWS_AS(toml::parse("x = 'oops\n"), ParseError);
  CHECK_THROWS_AS(toml::parse("x = {a = 1}\n"), ParseError);  // inline tables
  CHECK_THROWS_AS(toml::parse("x = 1\nx = 2\n"), ParseError);  // duplicate key
  CHECK_THROWS_WITH_AS(toml::parse("\n\nx = @\n"),
                       "TOML line 3: bad value token '@'", ParseError);
}

TEST_CASE("toml: typed lookup helpers") {
  const toml::Table t = toml::parse("x = 4\ns = \"hi\"\n");
  CHECK(toml::get_int_or(t, "x", 9) == 4);
  CHECK(toml::get_int_or(t, "missing", 9) == 9);
  CHECK(toml::get_string_or(t, "s", "") == "hi");
  CHECK(toml::get_number_or(t, "x", 0.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(toml::get_string(t, "missing", "test"), ParseError);
  CHECK_THROWS_AS((void)t.at("s").as_int(), ParseError);
}
