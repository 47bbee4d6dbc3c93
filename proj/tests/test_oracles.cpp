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
#include <cmath>

#include "clg/generators.hpp"
#include "clg/oracles.hpp"
#include "clg/payoff.hpp"
#include "clg/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace clg;

namespace {

RedMixedStrategy only_empty() {
  RedMixedStrategy mix;
  mix.add(InterdictionPlan{}, 1.0);
  return mix;
}

LogisticsPlan random_plan(const Scenario& s, const LayeredContext& ctx, Rng& rng) {
  LogisticsPlan plan;
  plan.routes.resize(s.connectors.size());
  for (int c = 0; c < ctx.num_connectors(); ++c) {
    const LayeredGraph& g = ctx.graph(c);
    int at = g.origin();
    while (g.node(at).t < s.horizon) {
      const auto& out = g.out_edges(at);
      const int e = out[rng.uniform_int(0, static_cast<int>(out.size()) - 1)];
      plan.routes[c].push_back(g.edge(e).phys_edge);
      at = g.edge(e).head;
    }
  }
  return plan;
}

InterdictionPlan random_interdiction(const Scenario& s, Rng& rng) {
  std::vector<int> picked;
  double cost = 0.0;
  for (int e : s.interdiction.interdictable_edges) {
    if (!rng.bernoulli(0.2)) continue;
    const double c = *s.graph.edges[e].interdiction_cost;
    if (cost + c > s.interdiction.budget) continue;
    picked.push_back(e);
    cost += c;
  }
  return make_interdiction_plan(s, std::move(picked));
}

}  // namespace

TEST_CASE("blue br: no-Red value of a satisfiable sat gadget is 1") {
  Scenario s = generate_sat_gadget({{1, -2}, {-1, 2}});
  LayeredContext ctx(s);
  auto br = blue_best_response(s, ctx, only_empty());
  REQUIRE(br.optimal);
  CHECK(br.value == doctest::Approx(1.0));
  CHECK(br.value <= br.bound + 1e-9);
  // The returned plan replays to the same value through the recourse LP.
  CHECK(recourse_utility(s, br.plan, InterdictionPlan{}).first == doctest::Approx(br.value));
}

TEST_CASE("blue br: unsatisfiable clause pair reaches only half") {
  Scenario s = generate_sat_gadget({{1}, {-1}});
  LayeredContext ctx(s);
  auto br = blue_best_response(s, ctx, only_empty());
  REQUIRE(br.optimal);
  CHECK(br.value == doctest::Approx(0.5));
}

TEST_CASE("blue br: fixed path equals recourse against a pure interdiction") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 4;
  opt.budget = 2;
  opt.seed = 21;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  Rng rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    LogisticsPlan plan = random_plan(s, ctx, rng);
    InterdictionPlan red = random_interdiction(s, rng);
    RedMixedStrategy mix;
    mix.add(red, 1.0);
    BlueBrModel model = build_blue_br_model(s, ctx, mix);
    // Force the path flows to the plan.
    std::vector<std::vector<int>> layered(s.connectors.size());
    for (int c = 0; c < ctx.num_connectors(); ++c) {
      layered[c] = ctx.route_to_layered(c, plan.routes[c]);
      std::vector<char> on(ctx.graph(c).num_edges(), 0);
      for (int e : layered[c]) on[e] = 1;
      for (int e = 0; e < ctx.graph(c).num_edges(); ++e)
        model.model.set_bounds(model.f[c][e], on[e], on[e]);
    }
    auto out = milp::solve(model.model);
    REQUIRE(out.status == milp::SolveStatus::Optimal);
    CHECK(out.objective == doctest::Approx(recourse_utility(s, plan, red).first).epsilon(1e-7));
  }
}

TEST_CASE("blue br: set cover gadget against a half-half cut mixture") {
  SetCoverInstance inst;
  inst.universe_size = 2;
  inst.sets = {{0}, {1}};
  inst.budget = 1;
  auto [s, mixture] = generate_set_cover_gadget(inst);
  (void)mixture;
  LayeredContext ctx(s);
  RedMixedStrategy mix;
  mix.add(make_interdiction_plan(s, {s.graph.edge_index.at("S1__S1p")}), 0.5);
  mix.add(make_interdiction_plan(s, {s.graph.edge_index.at("S2__S2p")}), 0.5);
  auto br = blue_best_response(s, ctx, mix);
  REQUIRE(br.optimal);
  CHECK(br.value == doctest::Approx(0.5));
  // Exhaustive check over all plans.
  auto plans = enumerate_logistics_plans(ctx, 100000);
  double best = 0.0;
  for (const auto& plan : plans) {
    double v = 0.0;
    for (int j = 0; j < mix.size(); ++j)
      v += mix.probs[j] * recourse_utility(s, plan, mix.support[j]).first;
    best = std::max(best, v);
  }
  CHECK(br.value == doctest::Approx(best).epsilon(1e-7));
}

TEST_CASE("blue br: time limit still returns an incumbent") {
  GridOptions opt;
  opt.n = 4;
  opt.horizon = 6;
  opt.budget = 2;
  opt.seed = 8;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  OracleOptions opts;
  opts.time_limit = 0.05;
  auto br = blue_best_response(s, ctx, only_empty(), opts);
  CHECK(br.value >= -1e-9);
  CHECK(br.value <= br.bound + 1e-6);
  CHECK(recourse_utility(s, br.plan, InterdictionPlan{}).first == doctest::Approx(br.value));
}

TEST_CASE("red br: budget zero must return the empty interdiction") {
  Scenario s = testing::two_corridor_scenario();
  s.interdiction.budget = 0.0;
  s.finalize();
  LayeredContext ctx(s);
  BlueMixedStrategy blue;
  LogisticsPlan corridor;
  corridor.routes = {{s.graph.edge_index.at("sa"), s.graph.edge_index.at("ad"),
                      s.graph.edge_index.at("loop_d")}};
  blue.add(corridor, 1.0);
  auto br = red_best_response(s, ctx, blue);
  REQUIRE(br.optimal);
  CHECK(br.plan.edges.empty());
  CHECK(br.value == doctest::Approx(recourse_utility(s, corridor, InterdictionPlan{}).first));
}

TEST_CASE("red br: grid singleton mixture matches enumeration") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 4;
  opt.budget = 2;
  Rng rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    opt.seed = 400 + trial;
    Scenario s = generate_grid_world(opt);
    LayeredContext ctx(s);
    LogisticsPlan plan = random_plan(s, ctx, rng);
    BlueMixedStrategy blue;
    blue.add(plan, 1.0);
    auto br = red_best_response(s, ctx, blue);
    REQUIRE(br.optimal);
    double best = milp::kInf;
    for (const auto& red : enumerate_interdiction_plans(s, 100000))
      best = std::min(best, recourse_utility(s, plan, red).first);
    CHECK(br.value == doctest::Approx(best).epsilon(1e-6));
    CHECK(recourse_utility(s, plan, br.plan).first == doctest::Approx(br.value).epsilon(1e-6));
  }
}

TEST_CASE("red br: set cover reduction certifies cover existence") {
  SetCoverInstance inst;
  inst.universe_size = 2;
  inst.sets = {{0}, {1}};

  SUBCASE("budget covering the universe zeroes the value") {
    inst.budget = 2;
    auto [s, mixture] = generate_set_cover_gadget(inst);
    LayeredContext ctx(s);
    auto br = red_best_response(s, ctx, mixture);
    REQUIRE(br.optimal);
    CHECK(br.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(br.plan.edges.size() == 2);
  }
  SUBCASE("budget below the cover size leaves half the value") {
    inst.budget = 1;
    auto [s, mixture] = generate_set_cover_gadget(inst);
    LayeredContext ctx(s);
    auto br = red_best_response(s, ctx, mixture);
    REQUIRE(br.optimal);
    CHECK(br.value == doctest::Approx(0.5));
  }
  SUBCASE("single element, budget one") {
    SetCoverInstance tiny;
    tiny.universe_size = 1;
    tiny.sets = {{0}};
    tiny.budget = 1;
    auto [s, mixture] = generate_set_cover_gadget(tiny);
    LayeredContext ctx(s);
    auto br = red_best_response(s, ctx, mixture);
    REQUIRE(br.optimal);
    CHECK(br.value == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("red br: penalized inner LP at a fixed interdiction equals truncation recourse") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 4;
  opt.budget = 2;
  Rng rng(31337);
  for (int trial = 0; trial < 8; ++trial) {
    opt.seed = 500 + trial;
    Scenario s = generate_grid_world(opt);
    LayeredContext ctx(s);
    BlueMixedStrategy blue;
    const int support = rng.uniform_int(1, 3);
    std::vector<double> weights;
    for (int i = 0; i < support; ++i) weights.push_back(rng.uniform_real(0.1, 1.0));
    double total = 0.0;
    for (double w : weights) total += w;
    for (int i = 0; i < support; ++i) blue.add(random_plan(s, ctx, rng), weights[i] / total);
    blue.prune();
    InterdictionPlan red = random_interdiction(s, rng);

    auto inner = build_red_inner_model(s, blue, red);
    auto out = milp::solve(inner);
    REQUIRE(out.status == milp::SolveStatus::Optimal);
    double expected = 0.0;
    for (int i = 0; i < blue.size(); ++i)
      expected += blue.probs[i] * recourse_utility(s, blue.support[i], red).first;
    CHECK(out.objective == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("red br: duality harness") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 3;
  opt.budget = 2;
  opt.seed = 606;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  Rng rng(11);
  BlueMixedStrategy blue;
  blue.add(random_plan(s, ctx, rng), 0.6);
  blue.add(random_plan(s, ctx, rng), 0.4);
  blue.prune();

  RedBrModel outer = build_red_br_model(s, blue);
  InterdictionPlan fixed = random_interdiction(s, rng);
  // Pin y to the fixed interdiction.
  for (size_t o = 0; o < outer.y.size(); ++o) {
    const double v = fixed.contains(s.interdiction.interdictable_edges[o]) ? 1.0 : 0.0;
    outer.model.set_bounds(outer.y[o], v, v);
  }
  auto dual_out = milp::solve(outer.model);
  REQUIRE(dual_out.status == milp::SolveStatus::Optimal);
  auto inner = build_red_inner_model(s, blue, fixed);
  auto primal_out = milp::solve(inner);
  REQUIRE(primal_out.status == milp::SolveStatus::Optimal);
  // Strong duality at the fixed interdiction.
  CHECK(dual_out.objective == doctest::Approx(primal_out.objective).epsilon(1e-6));

  // Any feasible dual point bounds the inner optimum from above: re-solve
  // with a perturbed objective and evaluate the original objective there.
  milp::Model perturbed = outer.model;
  Rng prng(17);
  for (int v = 0; v < outer.num_dual_rows; ++v) {
    // Only inequality multipliers (bounded below by zero) can take a positive
    // nudge without unbounding the minimization.
    if (perturbed.var(v).lb == 0.0)
      perturbed.set_obj_coef(v, perturbed.obj()[v] + prng.uniform_real(0.0, 0.05));
  }
  auto warped = milp::solve(perturbed);
  REQUIRE(warped.status == milp::SolveStatus::Optimal);
  double original_at_warped = 0.0;
  for (int v = 0; v < outer.model.num_vars(); ++v)
    original_at_warped += outer.model.obj()[v] * warped.primal[v];
  CHECK(original_at_warped >= primal_out.objective - 1e-6);
}

TEST_CASE("oracles never undercut incumbent rows or columns") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 3;
  opt.budget = 1;
  opt.seed = 777;
  Scenario s = generate_grid_world(opt);
  LayeredContext ctx(s);
  Rng rng(4);
  std::vector<LogisticsPlan> rows;
  for (int i = 0; i < 3; ++i) rows.push_back(random_plan(s, ctx, rng));
  std::vector<InterdictionPlan> cols{InterdictionPlan{}, random_interdiction(s, rng)};

  RedMixedStrategy red_mix;
  red_mix.add(cols[0], 0.5);
  red_mix.add(cols[1], 0.5);
  red_mix.prune();
  auto bb = blue_best_response(s, ctx, red_mix);
  REQUIRE(bb.optimal);
  for (const auto& row : rows) {
    double v = 0.0;
    for (int j = 0; j < red_mix.size(); ++j)
      v += red_mix.probs[j] * recourse_utility(s, row, red_mix.support[j]).first;
    CHECK(bb.value >= v - 1e-6);
  }

  BlueMixedStrategy blue_mix;
  blue_mix.add(rows[0], 0.3);
  blue_mix.add(rows[1], 0.7);
  blue_mix.prune();
  auto rb = red_best_response(s, ctx, blue_mix);
  REQUIRE(rb.optimal);
  for (const auto& col : cols) {
    double v = 0.0;
    for (int i = 0; i < blue_mix.size(); ++i)
      v += blue_mix.probs[i] * recourse_utility(s, blue_mix.support[i], col).first;
    CHECK(rb.value <= v + 1e-6);
  }
}

TEST_CASE("big-M constant honors caps and supply") {
  Scenario s = testing::two_corridor_scenario();
  CHECK(big_m_constant(s, 0) == doctest::Approx(2.0));  // min(cap 2, supply 2)
  Scenario grid = generate_grid_world({});
  CHECK(big_m_constant(grid, 0) == doctest::Approx(11.0));
  CHECK(red_penalty_constant(grid) <= 2.0);             // max payoff, D >= 2
  CHECK(red_penalty_constant(grid) >= 1.0);
}
