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

#include "clg/equilibrium.hpp"
#include "clg/generators.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace clg;

namespace {

PayoffMatrix literal_matrix(std::vector<std::vector<double>> rows) {
  PayoffMatrix m;
  m.rows.resize(rows.size());
  m.cols.resize(rows[0].size());
  for (const auto& r : rows)
    for (double v : r) m.entries.push_back(v);
  return m;
}

// Brute-force max-sat count for tiny formulas.
int max_satisfiable(const CnfFormula& cnf, int n) {
  int best = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    int sat = 0;
    for (const auto& clause : cnf) {
      bool ok = false;
      for (int lit : clause) {
        const int var = std::abs(lit) - 1;
        const bool value = (mask >> var) & 1;
        if ((lit > 0) == value) ok = true;
      }
      sat += ok;
    }
    best = std::max(best, sat);
  }
  return best;
}

}  // namespace

TEST_CASE("subgame nash: matching pennies") {
  auto sol = subgame_nash(literal_matrix({{1, -1}, {-1, 1}}));
  CHECK(sol.value == doctest::Approx(0.0));
  CHECK(sol.x_blue[0] == doctest::Approx(0.5));
  CHECK(sol.x_red[0] == doctest::Approx(0.5));
  CHECK(std::abs(sol.blue_lp_value - sol.red_lp_value) < 1e-8);
}

TEST_CASE("subgame nash: single entry") {
  auto sol = subgame_nash(literal_matrix({{3}}));
  CHECK(sol.value == doctest::Approx(3.0));
  CHECK(sol.x_blue[0] == doctest::Approx(1.0));
}

TEST_CASE("subgame nash: 2x2 closed form") {
  // [[0,2],[3,1]]: value (0*1 - 2*3) / (0 + 1 - 2 - 3) = 1.5, x = (0.5, 0.5).
  auto sol = subgame_nash(literal_matrix({{0, 2}, {3, 1}}));
  CHECK(sol.value == doctest::Approx(1.5));
  CHECK(sol.x_blue[0] == doctest::Approx(0.5));
  CHECK(sol.x_blue[1] == doctest::Approx(0.5));
  CHECK(sol.x_red[0] == doctest::Approx(0.25));
  CHECK(std::abs(sol.blue_lp_value - sol.red_lp_value) < 1e-8);
}

TEST_CASE("subgame value monotone in strategy sets") {
  PayoffMatrix m = literal_matrix({{2, 0, 1}, {1, 3, 0}, {0, 1, 4}});
  auto value_of = [&](std::vector<int> rows, std::vector<int> cols) {
    PayoffMatrix sub;
    sub.rows.resize(rows.size());
    sub.cols.resize(cols.size());
    for (int i : rows)
      for (int j : cols) sub.entries.push_back(m.at(i, j));
    return subgame_nash(sub).value;
  };
  // Non-decreasing when Blue's set grows, non-increasing when Red's grows.
  CHECK(value_of({0}, {0, 1, 2}) <= value_of({0, 1}, {0, 1, 2}) + 1e-9);
  CHECK(value_of({0, 1}, {0, 1, 2}) <= value_of({0, 1, 2}, {0, 1, 2}) + 1e-9);
  CHECK(value_of({0, 1, 2}, {0}) >= value_of({0, 1, 2}, {0, 1}) - 1e-9);
  CHECK(value_of({0, 1, 2}, {0, 1}) >= value_of({0, 1, 2}, {0, 1, 2}) - 1e-9);
}

TEST_CASE("double oracle: satisfiable sat gadget converges to 1") {
  Scenario s = generate_sat_gadget({{1, -2}, {-1, 2}});
  DoubleOracleConfig config;
  config.epsilon = 1e-6;
  SolveResult result = double_oracle(s, config);
  CHECK(result.termination == "converged");
  CHECK(result.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(result.gap <= config.epsilon + 1e-12);
  CHECK(result.blue.validate().empty());
  CHECK(result.red.validate().empty());
  // Bracket sanity.
  CHECK(result.lower_bound <= result.value + 1e-9);
  CHECK(result.value <= result.upper_bound + 1e-9);
}

TEST_CASE("double oracle: budget zero equals the no-Red optimum") {
  Scenario s = testing::two_corridor_scenario();
  s.interdiction.budget = 0.0;
  s.finalize();
  DoubleOracleConfig config;
  config.epsilon = 1e-8;
  SolveResult result = double_oracle(s, config);
  CHECK(result.termination == "converged");
  CHECK(result.value == doctest::Approx(2.0));  // both units through a corridor
  CHECK(result.iterations <= 2);
}

TEST_CASE("double oracle: two-corridor game is decided by the protected route") {
  Scenario s = testing::two_corridor_scenario();
  DoubleOracleConfig config;
  config.epsilon = 1e-7;
  SolveResult result = double_oracle(s, config);
  CHECK(result.termination == "converged");
  CHECK(result.value == doctest::Approx(1.2).epsilon(1e-6));
  // Exploitability of the returned mixture certifies the value.
  CHECK(exploitability(s, result.blue) == doctest::Approx(result.value).epsilon(1e-5));
}

TEST_CASE("double oracle vs brute force on small grids") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 3;
  opt.budget = 1;
  DoubleOracleConfig config;
  config.epsilon = 1e-6;
  for (std::uint64_t seed : {11u, 12u}) {
    opt.seed = seed;
    Scenario s = generate_grid_world(opt);
    SolveResult done = double_oracle(s, config);
    BruteForceResult reference = exact_nash_bruteforce(s);
    INFO("seed ", seed);
    CHECK(std::abs(done.value - reference.value) <= 2 * config.epsilon + 1e-6);
  }
}

TEST_CASE("brute force: sat gadgets match the assignment enumerator") {
  const std::vector<CnfFormula> formulas = {
      {{1}},
      {{1}, {-1}},
      {{1, -2}, {-1, 2}},
      {{1, 2}, {-1, -2}, {1, -2}},
  };
  for (const auto& cnf : formulas) {
    int n = 0;
    for (const auto& clause : cnf)
      for (int lit : clause) n = std::max(n, std::abs(lit));
    Scenario s = generate_sat_gadget(cnf);
    BruteForceResult result = exact_nash_bruteforce(s);
    const double expected =
        static_cast<double>(max_satisfiable(cnf, n)) / static_cast<double>(cnf.size());
    INFO("clauses ", cnf.size());
    CHECK(result.value == doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("brute force: budget zero reduces to the best row") {
  Scenario s = testing::two_corridor_scenario();
  s.interdiction.budget = 0.0;
  s.finalize();
  BruteForceResult result = exact_nash_bruteforce(s);
  CHECK(result.value == doctest::Approx(2.0));
  CHECK(result.red.size() == 1);
  CHECK(result.red.support[0].edges.empty());
}

TEST_CASE("exploitability: uniform mixture over a two-plan toy") {
  Scenario s = testing::two_corridor_scenario();
  LogisticsPlan x, y;
  x.routes = {{s.graph.edge_index.at("sa"), s.graph.edge_index.at("ad"),
               s.graph.edge_index.at("loop_d")}};
  y.routes = {{s.graph.edge_index.at("sb"), s.graph.edge_index.at("bd"),
               s.graph.edge_index.at("loop_d")}};
  BlueMixedStrategy mix;
  mix.add(x, 0.5);
  mix.add(y, 0.5);
  // Against any single cut, half the mass survives and delivers 2.
  const double expected = 1.0;
  CHECK(exploitability(s, mix) == doctest::Approx(expected));
  // Hand enumeration of Red's options agrees.
  double best = milp::kInf;
  for (const auto& red : enumerate_interdiction_plans(s, 1000)) {
    double v = 0.5 * recourse_utility(s, x, red).first + 0.5 * recourse_utility(s, y, red).first;
    best = std::min(best, v);
  }
  CHECK(best == doctest::Approx(expected));
}

TEST_CASE("exploitability rejects infeasible support") {
  Scenario s = testing::two_corridor_scenario();
  BlueMixedStrategy mix;
  LogisticsPlan bogus;
  bogus.routes = {{s.graph.edge_index.at("ad")}};  // does not start at s
  mix.add(bogus, 1.0);
  CHECK_THROWS(exploitability(s, mix));
}

TEST_CASE("double oracle: trace is well formed") {
  Scenario s = testing::two_corridor_scenario();
  DoubleOracleConfig config;
  config.epsilon = 1e-6;
  SolveResult result = double_oracle(s, config);
  REQUIRE(!result.trace.empty());
  const std::string csv = result.trace_csv();
  CHECK(csv.find("iter,subgame_value") != std::string::npos);
  for (const auto& row : result.trace) {
    CHECK(row.gap >= 0.0);
    CHECK(row.seconds >= 0.0);
  }
  // Epsilon must be positive.
  DoubleOracleConfig bad;
  bad.epsilon = 0.0;
  CHECK_THROWS_AS(double_oracle(s, bad), std::invalid_argument);
}

TEST_CASE("game value monotone in budget and horizon on one grid") {
  GridOptions opt;
  opt.n = 3;
  opt.horizon = 3;
  opt.seed = 2024;
  DoubleOracleConfig config;
  config.epsilon = 1e-7;
  double previous = milp::kInf;
  for (double budget : {0.0, 1.0, 2.0}) {
    opt.budget = budget;
    const double value = double_oracle(generate_grid_world(opt), config).value;
    CHECK(value <= previous + 1e-8);
    previous = value;
  }
  opt.budget = 1.0;
  previous = -milp::kInf;
  for (int horizon : {3, 4, 5}) {
    opt.horizon = horizon;
    const double value = double_oracle(generate_grid_world(opt), config).value;
    CHECK(value >= previous - 1e-8);
    previous = value;
  }
}
