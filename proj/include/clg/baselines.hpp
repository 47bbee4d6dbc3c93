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

#ifndef CLG_BASELINES_HPP_
#define CLG_BASELINES_HPP_

#include <string>
#include <vector>

#include "clg/equilibrium.hpp"
#include "clg/oracles.hpp"
#include "clg/strategy.hpp"

namespace clg {

// Blue's optimal plan assuming Red does not exist.
std::pair<LogisticsPlan, double> no_red_optimal(const Scenario& scenario);

struct MinOverlapResult {
  BlueMixedStrategy strategy;
  double max_overlap = 0.0;
  bool optimal = false;
  bool has_duplicates = false;
};

// One MILP: n_str plan replicas, each achieving payoff >= target with no Red,
// minimizing the maximum per-edge connector overlap (wait loops excluded).
// Throws std::invalid_argument when the target payoff is unachievable.
MinOverlapResult min_overlap_strategy(const Scenario& scenario, double target_payoff, int n_str,
                                      double time_limit = milp::kInf);

struct PriceOfRobustness {
  std::vector<double> budgets;          // ascending
  std::vector<std::vector<double>> value;  // [expected][true]
  std::vector<double> game_values;      // DO value at each expected budget

  std::string to_csv() const;
};

// Runs the double oracle at every expected budget and evaluates each
// resulting mixture against an exactly best-responding Red at every true
// budget (Table layout: rows = expected, columns = true).
PriceOfRobustness price_of_robustness(const Scenario& scenario, std::vector<double> budgets,
                                      const DoubleOracleConfig& config = {});

}  // namespace clg

#endif  // CLG_BASELINES_HPP_
