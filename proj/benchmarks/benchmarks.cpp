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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "btverify/astar.hpp"
#include "btverify/behavior_tree.hpp"
#include "btverify/bus.hpp"
#include "btverify/raycast.hpp"
#include "btverify/statechart.hpp"

namespace {

using namespace btverify;

class FixedExecutor final : public LeafExecutor {
 public:
  TickStatus tick_leaf(const std::string&) override { return TickStatus::Running; }
  void halt_leaf(const std::string&) override {}
};

BTNode wide_tree(int fanout, int depth) {
  static int counter = 0;
  BTNode n;
  if (depth == 0) {
    n.kind = BTNode::Kind::Action;
    n.id = "leaf" + std::to_string(counter++);
    return n;
  }
  n.kind = depth % 2 == 0 ? BTNode::Kind::Sequence : BTNode::Kind::Fallback;
  for (int i = 0; i < fanout; ++i) {
    n.children.push_back(wide_tree(fanout, depth - 1));
  }
  return n;
}

void BM_TickCycle(benchmark::State& state) {
  FixedExecutor exec;
  TickEngine engine(wide_tree(static_cast<int>(state.range(0)), 3), exec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.tick_once());
    engine.clear_trace();
  }
}
BENCHMARK(BM_TickCycle)->Arg(3)->Arg(6);

GridMap random_map(int size, double density, unsigned seed) {
  GridMap map(size, size);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const bool border = x == 0 || y == 0 || x == size - 1 || y == size - 1;
      map.set_occupied(x, y, border || coin(rng) < density);
    }
  }
  map.set_occupied(1, 1, false);
  map.set_occupied(size - 2, size - 2, false);
  return map;
}

void BM_PlanPath(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const GridMap map = random_map(size, 0.2, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_path(map, {1, 1}, {size - 2, size - 2}));
  }
}
BENCHMARK(BM_PlanPath)->Arg(32)->Arg(64);

void BM_Raycast(benchmark::State& state) {
  const GridMap map = random_map(64, 0.1, 7);
  const Pose pose{32.2, 31.7, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(raycast(map, pose, static_cast<int>(state.range(0)), 80.0));
  }
}
BENCHMARK(BM_Raycast)->Arg(90)->Arg(360);

void BM_ChartDeliver(benchmark::State& state) {
  StateChart chart = parse_scxml(R"(<scxml initial="idle">
    <state id="idle"><transition event="request" target="get"/></state>
    <state id="get">
      <transition event="reply" cond="level &gt; 20" target="idle"/>
      <transition event="reply" cond="level &lt;= 20" target="failure"/>
    </state>
    <state id="failure"/>
  </scxml>)");
  ChartInstance instance(chart);
  const Event request{"request", {}};
  const Event reply{"reply", {{"level", 55.0}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(instance.deliver(request));
    benchmark::DoNotOptimize(instance.deliver(reply));
  }
}
BENCHMARK(BM_ChartDeliver);

void BM_BusQuery(benchmark::State& state) {
  Bus bus;
  bus.register_endpoint("echo", [](const QueryContext&, const Payload& p) {
    return p;
  });
  const Payload args{{"level", 100.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bus.query("client", "echo", "ping", args));
  }
}
BENCHMARK(BM_BusQuery);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
