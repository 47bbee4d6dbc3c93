// Copyright 2026 The Contested Logistics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "clg/generators.hpp"
#include "clg/scenario.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace clg;

TEST_CASE("validate: triangle scenario is clean") {
  CHECK(validate_scenario(testing::triangle_scenario()).empty());
}

TEST_CASE("validate: connector must start at a warehouse") {
  Scenario s = testing::triangle_scenario();
  s.connectors[1].initial_location = s.graph.node("C");  // no warehouse at C
  const auto violations = validate_scenario(s);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("warehouse") != std::string::npos);
}

TEST_CASE("validate: unreachable demand is legal") {
  // A demand node with no incoming edges: a value-0 game, but a valid one.
  Scenario s;
  s.horizon = 2;
  s.graph.add_node("X");
  s.graph.add_node("D");
  s.graph.add_edge("X", "X", "loopX");
  s.packages.push_back(Package{"p", 1.0, 1.0});
  Connector c;
  c.id = "c";
  c.initial_location = s.graph.node("X");
  c.weight_cap = c.volume_cap = 1.0;
  c.traversal_time[0] = 1;
  s.connectors.push_back(c);
  Warehouse wx;
  wx.node = s.graph.node("X");
  wx.supply = {1.0};
  s.warehouses.push_back(wx);
  Warehouse wd;
  wd.node = s.graph.node("D");
  wd.demand = {1.0};
  wd.unit_payoff = 1.0;
  wd.max_units = 1.0;
  s.warehouses.push_back(wd);
  s.finalize();
  CHECK(validate_scenario(s).empty());
}

TEST_CASE("validate: dead ends are reported") {
  Scenario s = testing::triangle_scenario();
  // Remove the loop at A and every edge out of C for c1: C becomes a trap.
  Connector& c1 = s.connectors[0];
  c1.traversal_time.erase(s.graph.edge_index.at("CA"));
  c1.traversal_time.erase(s.graph.edge_index.at("CB"));
  const auto violations = validate_scenario(s);
  bool found = false;
  for (const auto& v : violations)
    if (v.find("dead-ends") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("file io: grid round trip is structurally lossless") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 4;
  opt.seed = 7;
  Scenario s = generate_grid_world(opt);
  Scenario back = load_scenario(save_scenario(s));
  CHECK(scenario_equal(s, back));
  // And byte-stable through a second round trip.
  CHECK(save_scenario(back) == save_scenario(s));
}

TEST_CASE("file io: missing horizon names the field") {
  const char* text = R"({"nodes":["A"],"edges":[],"packages":[],"connectors":[],
                         "warehouses":[],"budget":0})";
  CHECK_THROWS_WITH_AS(load_scenario(text), doctest::Contains("horizon"), ParseError);
}

TEST_CASE("file io: malformed json reports a parse error") {
  CHECK_THROWS_AS(load_scenario("{not json"), ParseError);
}

TEST_CASE("file io: uk-style scenario loads with four connectors") {
  Scenario s = load_scenario_file(std::string(CLG_SOURCE_DIR) + "/data/uk_style.json");
  REQUIRE(s.connectors.size() == 4);
  int trains = 0, trucks = 0;
  for (const auto& c : s.connectors) {
    if (c.weight_cap == 20.0) ++trains;
    if (c.weight_cap == 5.0) ++trucks;
  }
  CHECK(trains == 2);
  CHECK(trucks == 2);
  CHECK(validate_scenario(s).empty());
}

TEST_CASE("grid generator: structure at n=5") {
  GridOptions opt;
  opt.n = 5;
  opt.horizon = 10;
  opt.budget = 2;
  opt.seed = 42;
  Scenario s = generate_grid_world(opt);
  CHECK(s.graph.num_nodes() == 25);
  CHECK(s.warehouses.size() == 5);
  CHECK(s.connectors.size() == 2);
  CHECK(validate_scenario(s).empty());
  // Demand corners carry payoffs in [1, 2].
  int demands = 0;
  for (const auto& w : s.warehouses)
    if (w.has_demand()) {
      ++demands;
      CHECK(w.unit_payoff >= 1.0);
      CHECK(w.unit_payoff <= 2.0);
      CHECK(w.demand[0] == 3.0);
      CHECK(w.demand[1] == 2.0);
    }
  CHECK(demands == 2);
}

TEST_CASE("grid generator: full grid edge counts") {
  GridOptions opt;
  opt.n = 5;
  opt.edge_drop_prob = 0.0;
  opt.seed = 1;
  Scenario s = generate_grid_world(opt);
  // 40 undirected adjacencies -> 80 directed edges, plus 25 wait loops.
  CHECK(s.graph.num_edges() == 105);
  CHECK(s.interdiction.interdictable_edges.size() == 80);
  int loops = 0;
  for (const auto& e : s.graph.edges)
    if (e.tail == e.head) {
      ++loops;
      CHECK_FALSE(e.interdiction_cost.has_value());
    }
  CHECK(loops == 25);
}

TEST_CASE("grid generator: deterministic under the seed") {
  GridOptions opt;
  opt.n = 4;
  opt.horizon = 6;
  opt.seed = 123;
  opt.uniform_costs = false;
  Scenario a = generate_grid_world(opt);
  Scenario b = generate_grid_world(opt);
  CHECK(scenario_equal(a, b));
  CHECK(save_scenario(a) == save_scenario(b));
  opt.seed = 124;
  CHECK_FALSE(scenario_equal(a, generate_grid_world(opt)));
}

TEST_CASE("grid generator: cost mode does not reshuffle the topology") {
  GridOptions opt;
  opt.n = 4;
  opt.seed = 99;
  opt.uniform_costs = true;
  Scenario uniform = generate_grid_world(opt);
  opt.uniform_costs = false;
  Scenario random = generate_grid_world(opt);
  REQUIRE(uniform.graph.num_edges() == random.graph.num_edges());
  for (int e = 0; e < uniform.graph.num_edges(); ++e)
    CHECK(uniform.graph.edges[e].id == random.graph.edges[e].id);
}

TEST_CASE("grid generator: rejects n < 3") {
  GridOptions opt;
  opt.n = 2;
  CHECK_THROWS_AS(generate_grid_world(opt), std::invalid_argument);
}
