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

#include "btverify/bus.hpp"

#include <thread>
#include <vector>

#include <doctest.h>

#include "btverify/errors.hpp"
#include "btverify/trace.hpp"

using namespace btverify;

namespace {

Payload echo_handler(const QueryContext&, const Payload& args) { return args; }

}  // namespace

TEST_CASE("endpoints: register, query, duplicate, unregister") {
  Bus bus;
  int calls = 0;
  bus.register_endpoint("battery_component",
                        [&calls](const QueryContext&, const Payload&) -> Payload {
                          ++calls;
                          return {{"level", 100.0}};
                        });
  const Payload reply = bus.query("skill", "battery_component", "level");
  CHECK(calls == 1);
  CHECK(reply.at("level") == Scalar{100.0});

  CHECK_THROWS_AS(bus.register_endpoint("battery_component", echo_handler),
                  ProtocolError);

  bus.unregister_endpoint("battery_component");
  CHECK_THROWS_AS(bus.query("skill", "battery_component", "level"), WiringError);
  CHECK_THROWS_AS(bus.unregister_endpoint("battery_component"), WiringError);
}

TEST_CASE("hooks: a query emits exactly request then reply") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);
  std::vector<Message> seen;
  bus.attach_portmonitor({"cli", "svc"},
                         [&seen](const Message& m) { seen.push_back(m); });

  bus.query("cli", "svc", "ping", {{"x", 1.0}});
  REQUIRE(seen.size() == 2);
  CHECK(seen[0].direction == Direction::Request);
  CHECK(seen[0].procedure == "ping");
  CHECK(seen[0].payload.at("x") == Scalar{1.0});
  CHECK(seen[1].direction == Direction::Reply);
  CHECK(seen[1].payload.at("x") == Scalar{1.0});
  CHECK(seen[0].seq == seen[1].seq);
}

TEST_CASE("hooks: seq increases per connection, request/reply pairs share it") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);
  std::vector<std::uint64_t> seqs;
  bus.attach_portmonitor({"cli", "svc"},
                         [&seqs](const Message& m) { seqs.push_back(m.seq); });
  bus.query("cli", "svc", "a");
  bus.query("cli", "svc", "b");
  CHECK(seqs == std::vector<std::uint64_t>{1, 1, 2, 2});
}

TEST_CASE("hooks: attach mid-stream sees only later messages") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);
  bus.query("cli", "svc", "one");
  bus.query("cli", "svc", "two");
  bus.query("cli", "svc", "three");

  std::vector<Message> seen;
  bus.attach_portmonitor({"cli", "svc"},
                         [&seen](const Message& m) { seen.push_back(m); });
  bus.query("cli", "svc", "four");
  REQUIRE(seen.size() == 2);
  CHECK(seen[0].procedure == "four");
  CHECK(seen[0].seq == 4);
}

TEST_CASE("hooks: two sinks observe identical sequences") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);
  std::vector<std::string> a, b;
  auto record = [](std::vector<std::string>& out) {
    return [&out](const Message& m) { out.push_back(message_to_json(m)); };
  };
  bus.attach_portmonitor({"cli", "svc"}, record(a));
  bus.attach_portmonitor({"cli", "svc"}, record(b));
  bus.query("cli", "svc", "x");
  bus.query("cli", "svc", "y");
  CHECK(a == b);
  CHECK(a.size() == 4);
}

TEST_CASE("hooks: never-used connection stays silent; detach stops delivery") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);
  std::vector<Message> lonely;
  bus.attach_portmonitor({"ghost", "svc"},
                         [&lonely](const Message& m) { lonely.push_back(m); });
  bus.query("cli", "svc", "ping");
  CHECK(lonely.empty());

  std::vector<Message> seen;
  const HookId id = bus.attach_portmonitor(
      {"cli", "svc"}, [&seen](const Message& m) { seen.push_back(m); });
  bus.query("cli", "svc", "ping");
  CHECK(seen.size() == 2);
  bus.detach(id);
  bus.query("cli", "svc", "ping");
  CHECK(seen.size() == 2);

  CHECK_THROWS_AS(bus.detach(id), WiringError);
}

TEST_CASE("faults: handler errors propagate and emit a fault reply") {
  Bus bus;
  bus.register_endpoint("svc", [](const QueryContext&, const Payload&) -> Payload {
    throw ProtocolError("broken actuator");
  });
  std::vector<Message> seen;
  bus.attach_portmonitor({"cli", "svc"},
                         [&seen](const Message& m) { seen.push_back(m); });
  CHECK_THROWS_AS(bus.query("cli", "svc", "move"), QueryError);
  REQUIRE(seen.size() == 2);
  CHECK(seen[1].direction == Direction::Reply);
  CHECK(seen[1].fault);
  CHECK(std::get<std::string>(seen[1].payload.at("error")).find("broken actuator") !=
        std::string::npos);
}

TEST_CASE("taps: observe every connection") {
  Bus bus;
  bus.register_endpoint("a", echo_handler);
  bus.register_endpoint("b", echo_handler);
  std::vector<std::string> connections;
  bus.attach_tap([&connections](const Message& m) {
    if (m.direction == Direction::Request) connections.push_back(m.connection.str());
  });
  bus.query("x", "a", "p");
  bus.query("y", "b", "p");
  CHECK(connections == std::vector<std::string>{"x->a", "y->b"});
}

TEST_CASE("transparency: hooks do not change replies") {
  auto run = [](bool hooked) {
    Bus bus;
    int counter = 0;
    bus.register_endpoint("svc",
                          [&counter](const QueryContext&, const Payload&) -> Payload {
                            return {{"n", static_cast<double>(++counter)}};
                          });
    if (hooked) {
      bus.attach_portmonitor({"cli", "svc"}, [](const Message&) {});
    }
    std::vector<double> replies;
    for (int i = 0; i < 5; ++i) {
      replies.push_back(std::get<double>(bus.query("cli", "svc", "next").at("n")));
    }
    return replies;
  };
  CHECK(run(false) == run(true));
}

TEST_CASE("nested queries: handlers may call other endpoints") {
  Bus bus;
  bus.register_endpoint("inner", [](const QueryContext&, const Payload&) -> Payload {
    return {{"v", 7.0}};
  });
  bus.register_endpoint("outer",
                        [&bus](const QueryContext&, const Payload&) -> Payload {
                          return bus.query("outer", "inner", "get");
                        });
  CHECK(bus.query("cli", "outer", "fetch").at("v") == Scalar{7.0});
}

TEST_CASE("connection ids: string form round-trips") {
  const ConnectionId id{"BatteryLevelAbove30", "battery"};
  CHECK(id.str() == "BatteryLevelAbove30->battery");
  CHECK(ConnectionId::from_string(id.str()) == id);
  CHECK_THROWS_AS(ConnectionId::from_string("nonsense"), ParseError);
}

TEST_CASE("concurrency: per-connection total order under contention") {
  Bus bus;
  bus.register_endpoint("svc", echo_handler);

  // The sink runs under the connection lock, so plain vector access is safe.
  std::vector<Message> seen;
  bus.attach_portmonitor({"cli", "svc"},
                         [&seen](const Message& m) { seen.push_back(m); });

  constexpr int kThreads = 4;
  constexpr int kQueries = 200;
  std::vector<std::thread> workers;
  for (int t = 0; t < kThreads; ++t) {
    workers.emplace_back([&bus]() {
      for (int i = 0; i < kQueries; ++i) {
        bus.query("cli", "svc", "ping");
      }
    });
  }
  for (auto& w : workers) w.join();

  REQUIRE(seen.size() == kThreads * kQueries * 2);
  for (size_t i = 0; i < seen.size(); i += 2) {
    REQUIRE(seen[i].direction == Direction::Request);
    REQUIRE(seen[i + 1].direction == Direction::Reply);
    REQUIRE(seen[i].seq == seen[i + 1].seq);
    REQUIRE(seen[i].seq == i / 2 + 1);
  }
}
