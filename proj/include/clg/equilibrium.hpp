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

#ifndef CLG_EQUILIBRIUM_HPP_
#define CLG_EQUILIBRIUM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "clg/oracles.hpp"
#include "clg/payoff.hpp"
#include "clg/strategy.hpp"

namespace clg {

struct SubgameSolution {
  std::vector<double> x_blue;
  std::vector<double> x_red;
  double value = 0.0;
  double blue_lp_value = 0.0;  // the two sides' LP optima agree within 1e-8
  double red_lp_value = 0.0;
};

// Exact Nash equilibrium of the zero-sum matrix game (Blue maximizes rows).
SubgameSolution subgame_nash(const PayoffMatrix& matrix);

struct TraceRow {
  int iteration = 0;
  double subgame_value = 0.0;
  double blue_br_value = 0.0;
  double red_br_value = 0.0;
  double gap = 0.0;
  double seconds = 0.0;
};

struct DoubleOracleConfig {
  double epsilon = 1e-2;
  double br_time_limit = 5.0;  // seconds per best-response MILP
  int exact_every = 10;        // full-accuracy BlueBR cadence
  int max_iterations = 1000;
  double mip_rel_gap = 1e-6;
  double mip_abs_gap = 1e-9;
  std::vector<LogisticsPlan> initial_blue;
  std::vector<InterdictionPlan> initial_red;
};

struct SolveResult {
  double value = 0.0;        // final subgame value
  double lower_bound = 0.0;  // u(x_blue, red BR)
  double upper_bound = 0.0;  // u(blue BR, x_red)
  double gap = 0.0;
  BlueMixedStrategy blue;
  RedMixedStrategy red;
  std::vector<TraceRow> trace;
  std::string termination;  // converged | iteration-cap | stalled
  int iterations = 0;
  double wall_seconds = 0.0;

  std::string trace_csv() const;
};

// Algorithm: iterated subgame equilibria plus best responses until the
// bracket closes to epsilon (a 2-epsilon approximate equilibrium).
SolveResult double_oracle(const Scenario& scenario, const DoubleOracleConfig& config = {});

// Expected utility of the mixture against an exactly best-responding Red.
double exploitability(const Scenario& scenario, const BlueMixedStrategy& blue);

struct BruteForceCaps {
  std::int64_t max_blue_plans = 2000000;
  std::int64_t max_red_plans = 100000;
};

struct BruteForceResult {
  double value = 0.0;
  BlueMixedStrategy blue;
  RedMixedStrategy red;
  std::int64_t total_blue_plans = 0;
  std::int64_t distinct_rows = 0;
};

// Reference equilibrium over the full enumerated game (maximal interdiction
// sets plus the empty set). Exact up to LP tolerance; payoff-equivalent rows
// are collapsed before solving.
BruteForceResult exact_nash_bruteforce(const Scenario& scenario, const BruteForceCaps& caps = {});

}  // namespace clg

#endif  // CLG_EQUILIBRIUM_HPP_
