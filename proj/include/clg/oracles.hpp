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

#ifndef CLG_ORACLES_HPP_
#define CLG_ORACLES_HPP_

#include <optional>
#include <vector>

#include "clg/layered.hpp"
#include "clg/milp.hpp"
#include "clg/scenario.hpp"
#include "clg/strategy.hpp"

namespace clg {

struct OracleOptions {
  double time_limit = milp::kInf;
  double mip_rel_gap = 1e-6;
  double mip_abs_gap = 1e-9;
};

struct BlueBestResponse {
  LogisticsPlan plan;
  double value = 0.0;  // achieved expected utility against the mixture
  double bound = 0.0;  // solver bound; value <= bound
  bool optimal = false;
};

struct RedBestResponse {
  InterdictionPlan plan;
  double value = 0.0;  // achieved expected utility (Red minimizes)
  double bound = 0.0;  // solver bound; bound <= value
  bool optimal = false;
};

// Load bound per connector: min of capacity-implied unit limits and the total
// supply mass.
double big_m_constant(const Scenario& scenario, int connector);

// Penalty constant for the RedBR objective; max_w P(w), scaled up when some
// demand is below one unit so that cheating across an interdicted edge never
// pays.
double red_penalty_constant(const Scenario& scenario);

// Blue's best response to a Red mixture: one MILP with binary path flows per
// connector, per-scenario load copies, big-M load links, and load-cancelling
// rows that zero a destroyed connector's downstream warehouse pickups.
BlueBestResponse blue_best_response(const Scenario& scenario, const LayeredContext& ctx,
                                    const RedMixedStrategy& red_mixture,
                                    const OracleOptions& options = {},
                                    const LogisticsPlan* warm_plan = nullptr);

// Red's best response to a Blue mixture: the penalized inner load LP is
// dualized (the interdiction indicators enter only its objective), giving a
// single minimization MILP over interdictions and dual multipliers.
RedBestResponse red_best_response(const Scenario& scenario, const LayeredContext& ctx,
                                  const BlueMixedStrategy& blue_mixture,
                                  const OracleOptions& options = {},
                                  const InterdictionPlan* warm_plan = nullptr);

// Exposed model builders, used by the duality and penalty test harnesses.

struct BlueBrModel {
  milp::Model model;
  // f[c][layered_edge] -> binary variable id.
  std::vector<std::vector<int>> f;
  // Per support scenario i: l[i][c][edge * P + p], s[i][(w*(T+2)+t)*P + p],
  // g[i][w] (-1 where the warehouse has no demand).
  std::vector<std::vector<std::vector<int>>> l;
  std::vector<std::vector<int>> s;
  std::vector<std::vector<int>> g;
  std::vector<double> probs;  // support probabilities in model order
};
BlueBrModel build_blue_br_model(const Scenario& scenario, const LayeredContext& ctx,
                                const RedMixedStrategy& red_mixture);

struct RedBrModel {
  milp::Model model;
  std::vector<int> y;  // aligned with scenario.interdiction.interdictable_edges
  int num_dual_rows = 0;
};
RedBrModel build_red_br_model(const Scenario& scenario, const BlueMixedStrategy& blue_mixture);

// The penalized inner LP with the interdiction fixed: maximize expected
// Leontief value minus Z-penalties on loads riding at or past an interdicted
// position.
milp::Model build_red_inner_model(const Scenario& scenario, const BlueMixedStrategy& blue_mixture,
                                  const InterdictionPlan& interdiction);

}  // namespace clg

#endif  // CLG_ORACLES_HPP_
