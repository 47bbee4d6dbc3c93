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

#include <algorithm>
#include <set>

#include "clg/generators.hpp"
#include "clg/layered.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace clg;

namespace {

std::set<std::string> edge_set(const Scenario& s, const LayeredGraph& g) {
  std::set<std::string> out;
  for (int e = 0; e < g.num_edges(); ++e) {
    const LayeredEdge& le = g.edge(e);
    out.insert(s.graph.node_ids[g.node(le.tail).phys_node] + std::to_string(g.node(le.tail).t) +
               "->" + s.graph.node_ids[g.node(le.head).phys_node] +
               std::to_string(g.node(le.head).t));
  }
  return out;
}

}  // namespace

TEST_CASE("unroll: triangle connector c1 over two steps") {
  Scenario s = testing::triangle_scenario(2);
  LayeredGraph g(s, 0);
  CHECK(edge_set(s, g) == std::set<std::string>{"A0->B1", "A0->C1", "A0->A2", "B1->A2", "B1->C2",
                                                "C1->A2", "C1->B2"});
}

TEST_CASE("unroll: unreachable nodes are pruned for c2") {
  Scenario s = testing::triangle_scenario(2);
  LayeredGraph g(s, 1);
  CHECK(g.node_at(s.graph.node("A"), 0) == -1);
  CHECK(g.node_at(s.graph.node("B"), 1) == -1);  // no wait loop at B
  CHECK(g.node_at(s.graph.node("A"), 1) >= 0);
  CHECK(g.node_at(s.graph.node("C"), 1) >= 0);
}

TEST_CASE("unroll: zero horizon leaves a single node") {
  Scenario s = testing::triangle_scenario(0);
  LayeredGraph g(s, 0);
  CHECK(g.num_nodes() == 1);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("reachable_between") {
  Scenario s = testing::triangle_scenario(2);
  LayeredGraph g(s, 0);
  auto find_edge = [&](const char* tail, int t0, const char* head) {
    for (int e = 0; e < g.num_edges(); ++e) {
      const LayeredEdge& le = g.edge(e);
      if (g.node(le.tail).phys_node == s.graph.node(tail) && g.node(le.tail).t == t0 &&
          g.node(le.head).phys_node == s.graph.node(head))
        return e;
    }
    FAIL("edge not found");
    return -1;
  };
  const int a0b1 = find_edge("A", 0, "B");
  const int b1c2 = find_edge("B", 1, "C");
  const int a0c1 = find_edge("A", 0, "C");
  const int c1b2 = find_edge("C", 1, "B");
  CHECK(g.reachable_between(a0b1, b1c2));       // consecutive
  CHECK_FALSE(g.reachable_between(b1c2, a0b1));  // time only moves forward
  CHECK_FALSE(g.reachable_between(a0b1, c1b2));  // parallel branches
  CHECK_FALSE(g.reachable_between(a0c1, b1c2));
  CHECK_FALSE(g.reachable_between(a0b1, a0b1));  // irreflexive
}

TEST_CASE("truncate_plan") {
  Scenario s = testing::triangle_scenario(2);
  LogisticsPlan plan;
  plan.routes = {{s.graph.edge_index.at("AB"), s.graph.edge_index.at("BC")},
                 {s.graph.edge_index.at("BC"), s.graph.edge_index.at("CA")}};

  SUBCASE("empty interdiction leaves the plan unchanged") {
    TruncatedPlan t = truncate_plan(plan, InterdictionPlan{});
    CHECK(t.routes[0].edges == plan.routes[0]);
    CHECK_FALSE(t.routes[0].destroyed);
    CHECK_FALSE(t.routes[1].destroyed);
  }
  SUBCASE("cut at the interdicted edge, inclusive") {
    InterdictionPlan red = make_interdiction_plan(s, {s.graph.edge_index.at("BC")});
    TruncatedPlan t = truncate_plan(plan, red);
    CHECK(t.routes[0].edges ==
          std::vector<int>{s.graph.edge_index.at("AB"), s.graph.edge_index.at("BC")});
    CHECK(t.routes[0].destroyed);
    CHECK(t.routes[1].edges == std::vector<int>{s.graph.edge_index.at("BC")});
    CHECK(t.routes[1].destroyed);
  }
  SUBCASE("first hit wins and truncation is idempotent") {
    Scenario s2 = testing::triangle_scenario(3);
    LogisticsPlan p3;
    p3.routes = {{s2.graph.edge_index.at("AB"), s2.graph.edge_index.at("BC"),
                  s2.graph.edge_index.at("CA")},
                 {s2.graph.edge_index.at("BA"), s2.graph.edge_index.at("AB"),
                  s2.graph.edge_index.at("BC")}};
    InterdictionPlan red =
        make_interdiction_plan(s2, {s2.graph.edge_index.at("AB")});
    // route 0: AB is first -> prefix of length 1.
    TruncatedPlan t = truncate_plan(p3, red);
    CHECK(t.routes[0].edges.size() == 1);
    CHECK(t.routes[0].destroyed);
    CHECK(t.routes[1].edges.size() == 2);  // BA survives, AB kills
    // Idempotence: truncating the truncated routes changes nothing.
    LogisticsPlan again;
    again.routes = {t.routes[0].edges, t.routes[1].edges};
    TruncatedPlan t2 = truncate_plan(again, red);
    for (int c = 0; c < 2; ++c) {
      CHECK(t2.routes[c].edges == t.routes[c].edges);
      CHECK(t2.routes[c].destroyed == t.routes[c].destroyed);
    }
  }
}

TEST_CASE("enumerate paths: triangle c1 has five") {
  Scenario s = testing::triangle_scenario(2);
  LayeredGraph g(s, 0);
  CHECK(g.count_paths() == 5.0);
  CHECK(g.enumerate_paths(100).size() == 5);
}

TEST_CASE("enumerate paths: single node with a loop") {
  Scenario s;
  s.horizon = 3;
  s.graph.add_node("X");
  s.graph.add_edge("X", "X", "loop");
  s.packages.push_back(Package{"p", 1.0, 1.0});
  Connector c;
  c.id = "c";
  c.initial_location = 0;
  c.weight_cap = c.volume_cap = 1.0;
  c.traversal_time[0] = 1;
  s.connectors.push_back(c);
  Warehouse w;
  w.node = 0;
  w.supply = {1.0};
  s.warehouses.push_back(w);
  s.finalize();
  LayeredGraph g(s, 0);
  CHECK(g.count_paths() == 1.0);
  CHECK(g.enumerate_paths(10).size() == 1);
}

TEST_CASE("enumerate plans: product over connectors, count matches the DP") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 3;
  opt.seed = 5;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  const double expect = ctx.graph(0).count_paths() * ctx.graph(1).count_paths();
  auto plans = enumerate_logistics_plans(ctx, 1000000);
  CHECK(static_cast<double>(plans.size()) == expect);
  CHECK(static_cast<double>(ctx.graph(0).enumerate_paths(1000000).size()) ==
        ctx.graph(0).count_paths());
  // Cap violation reports per-connector counts.
  CHECK_THROWS_WITH(enumerate_logistics_plans(ctx, 2), doctest::Contains("path counts"));
}

TEST_CASE("enumerate interdictions") {
  SUBCASE("budget zero leaves only the empty set") {
    Scenario s = testing::triangle_scenario(2);
    s.interdiction.budget = 0.0;
    auto plans = enumerate_interdiction_plans(s, 1000);
    REQUIRE(plans.size() == 1);
    CHECK(plans[0].edges.empty());
  }
  SUBCASE("unit costs, budget one: empty set plus singletons") {
    Scenario s = testing::single_corridor_scenario();
    auto plans = enumerate_interdiction_plans(s, 1000);
    CHECK(plans.size() == 3);  // {}, {sa}, {ad}
    int singletons = 0;
    for (const auto& p : plans) singletons += p.edges.size() == 1;
    CHECK(singletons == 2);
  }
  SUBCASE("sat gadget: the loop is the only affordable edge") {
    Scenario s = generate_sat_gadget({{1, -2}, {-1, 2}});
    auto plans = enumerate_interdiction_plans(s, 1000);
    REQUIRE(plans.size() == 2);
    bool found_loop = false;
    for (const auto& p : plans)
      if (p.edges.size() == 1 && s.graph.edges[p.edges[0]].id == "loop_t") found_loop = true;
    CHECK(found_loop);
  }
  SUBCASE("include_all keeps dominated subsets") {
    Scenario s = testing::two_corridor_scenario();
    s.interdiction.budget = 2.0;
    s.finalize();
    auto maximal = enumerate_interdiction_plans(s, 1000);
    auto all = enumerate_interdiction_plans(s, 1000, true);
    CHECK(all.size() > maximal.size());
    CHECK(all.size() == 1 + 4 + 6);  // 4 interdictable edges, budget 2
  }
}

TEST_CASE("layered graphs are dags with strictly increasing time") {
  GridOptions opt;
  opt.n = 4;
  opt.horizon = 5;
  opt.seed = 11;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  for (int c = 0; c < ctx.num_connectors(); ++c) {
    const LayeredGraph& g = ctx.graph(c);
    for (int e = 0; e < g.num_edges(); ++e)
      CHECK(g.node(g.edge(e).head).t > g.node(g.edge(e).tail).t);
  }
}

TEST_CASE("dot export mentions nodes and edges") {
  Scenario s = testing::triangle_scenario(2);
  LayeredGraph g(s, 0);
  const std::string dot = g.to_dot(s);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("A,0") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
