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

#ifndef CLG_PAYOFF_HPP_
#define CLG_PAYOFF_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "clg/layered.hpp"
#include "clg/scenario.hpp"

namespace clg {

// Adaptive package flows for a (truncated) plan.
struct FlowSolution {
  // loads[c][pos][p]: load of package p on the pos-th surviving edge of
  // connector c's route.
  std::vector<std::vector<std::vector<double>>> loads;
  // stocks[w][t][p], t in 0..T+1.
  std::vector<std::vector<std::vector<double>>> stocks;
  // satisfied demand units per warehouse (0 where no demand).
  std::vector<double> satisfied;
};

// Sum over demand warehouses of P(w) * min(min_{p: D>0} stock/D, U(w)),
// evaluated on the stocks at T+1.
double leontief_value(const Scenario& scenario,
                      const std::vector<std::vector<double>>& terminal_stocks);

// Truncates the plan at the interdiction and solves the load-recourse LP.
// Throws std::logic_error if the LP is not solvable (a construction bug: the
// zero flow is always feasible).
std::pair<double, FlowSolution> recourse_utility(const Scenario& scenario,
                                                 const LogisticsPlan& plan,
                                                 const InterdictionPlan& interdiction);

// Cached pure-strategy payoff evaluator. Cell evaluations are independent;
// fills run in parallel when OpenMP is enabled.
class PayoffEvaluator {
 public:
  explicit PayoffEvaluator(const Scenario& scenario) : scenario_(&scenario) {}

  double value(const LogisticsPlan& blue, const InterdictionPlan& red);
  std::int64_t cache_hits() const { return hits_; }
  std::int64_t cache_size() const { return static_cast<std::int64_t>(cache_.size()); }

  // Visit-signature cache key: the recourse value depends on the truncated
  // routes only through the timed warehouse-visit sequences.
  std::string cache_key(const LogisticsPlan& blue, const InterdictionPlan& red) const;

  bool value_if_cached(const std::string& key, double& out);
  void publish(const std::string& key, double value) { cache_.emplace(key, value); }

 private:
  const Scenario* scenario_;
  std::unordered_map<std::string, double> cache_;
  std::int64_t hits_ = 0;
};

struct PayoffMatrix {
  std::vector<LogisticsPlan> rows;
  std::vector<InterdictionPlan> cols;
  std::vector<double> entries;  // row-major

  double at(int r, int c) const { return entries[r * cols.size() + c]; }
  std::string to_csv() const;
};

// Entry (i, j) = recourse_utility(rows[i], cols[j]); cached cells are reused
// and missing cells may be evaluated concurrently.
PayoffMatrix payoff_matrix(const Scenario& scenario, PayoffEvaluator& evaluator,
                           std::vector<LogisticsPlan> blue_plans,
                           std::vector<InterdictionPlan> red_plans);

}  // namespace clg

#endif  // CLG_PAYOFF_HPP_
