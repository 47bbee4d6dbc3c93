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

#include "clg/baselines.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace clg {

std::pair<LogisticsPlan, double> no_red_optimal(const Scenario& scenario) {
  LayeredContext ctx(scenario);
  RedMixedStrategy empty;
  empty.add(InterdictionPlan{}, 1.0);
  auto br = blue_best_response(scenario, ctx, empty);
  return {std::move(br.plan), br.value};
}

MinOverlapResult min_overlap_strategy(const Scenario& scenario, double target_payoff, int n_str,
                                      double time_limit) {
  if (n_str < 1) throw std::invalid_argument("n_str must be at least 1");
  LayeredContext ctx(scenario);
  const int C = static_cast<int>(scenario.connectors.size());
  const int P = static_cast<int>(scenario.packages.size());
  const int W = static_cast<int>(scenario.warehouses.size());
  const int T = scenario.horizon;

  milp::Model m;
  // Replica r gets its own path flows and no-Red load copy; z bounds the
  // per-physical-edge connector count summed over replicas.
  std::vector<std::vector<std::vector<int>>> f(n_str);
  for (int r = 0; r < n_str; ++r) {
    f[r].resize(C);
    for (int c = 0; c < C; ++c) {
      const LayeredGraph& g = ctx.graph(c);
      f[r][c].resize(g.num_edges());
      for (int e = 0; e < g.num_edges(); ++e) f[r][c][e] = m.add_binary();
      std::vector<std::pair<int, double>> emit;
      for (int e : g.out_edges(g.origin())) emit.emplace_back(f[r][c][e], 1.0);
      m.add_row(std::move(emit), milp::RowSense::Equal, 1.0);
      for (int v = 0; v < g.num_nodes(); ++v) {
        const int t = g.node(v).t;
        if (t < 1 || t > T - 1) continue;
        std::vector<std::pair<int, double>> terms;
        for (int e : g.in_edges(v)) terms.emplace_back(f[r][c][e], 1.0);
        for (int e : g.out_edges(v)) terms.emplace_back(f[r][c][e], -1.0);
        if (!terms.empty()) m.add_row(std::move(terms), milp::RowSense::Equal, 0.0);
      }
    }
  }

  for (int r = 0; r < n_str; ++r) {
    // No-Red load copy for replica r, with the replica's Leontief value
    // constrained to reach the target.
    std::vector<std::vector<int>> lv(C);
    std::vector<int> sv(static_cast<size_t>(W) * (T + 2) * P), gv(W, -1);
    for (int c = 0; c < C; ++c) {
      const LayeredGraph& g = ctx.graph(c);
      const double big_m = big_m_constant(scenario, c);
      lv[c].resize(static_cast<size_t>(g.num_edges()) * P);
      for (int e = 0; e < g.num_edges(); ++e)
        for (int p = 0; p < P; ++p) {
          lv[c][e * P + p] = m.add_continuous(0.0, big_m);
          m.add_row({{lv[c][e * P + p], 1.0}, {f[r][c][e], -big_m}}, milp::RowSense::LessEqual,
                    0.0);
        }
      for (int e = 0; e < g.num_edges(); ++e) {
        std::vector<std::pair<int, double>> weight, volume;
        for (int p = 0; p < P; ++p) {
          if (scenario.packages[p].unit_weight != 0)
            weight.emplace_back(lv[c][e * P + p], scenario.packages[p].unit_weight);
          if (scenario.packages[p].unit_volume != 0)
            volume.emplace_back(lv[c][e * P + p], scenario.packages[p].unit_volume);
        }
        if (!weight.empty())
          m.add_row(std::move(weight), milp::RowSense::LessEqual, scenario.connectors[c].weight_cap);
        if (!volume.empty())
          m.add_row(std::move(volume), milp::RowSense::LessEqual, scenario.connectors[c].volume_cap);
      }
      for (int v = 0; v < g.num_nodes(); ++v) {
        const int t = g.node(v).t;
        if (t < 1 || t > T - 1) continue;
        if (scenario.warehouse_index(g.node(v).phys_node) >= 0) continue;
        for (int p = 0; p < P; ++p) {
          std::vector<std::pair<int, double>> terms;
          for (int e : g.in_edges(v)) terms.emplace_back(lv[c][e * P + p], 1.0);
          for (int e : g.out_edges(v)) terms.emplace_back(lv[c][e * P + p], -1.0);
          if (!terms.empty()) m.add_row(std::move(terms), milp::RowSense::Equal, 0.0);
        }
      }
    }
    for (int w = 0; w < W; ++w)
      for (int t = 0; t <= T + 1; ++t)
        for (int p = 0; p < P; ++p)
          sv[(w * (T + 2) + t) * P + p] =
              t == 0 ? m.add_continuous(scenario.warehouses[w].supply[p],
                                        scenario.warehouses[w].supply[p])
                     : m.add_continuous(0.0, milp::kInf);
    for (int w = 0; w < W; ++w) {
      const int node = scenario.warehouses[w].node;
      for (int t = 0; t <= T; ++t)
        for (int p = 0; p < P; ++p) {
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(sv[(w * (T + 2) + t) * P + p], 1.0);
          terms.emplace_back(sv[(w * (T + 2) + t + 1) * P + p], -1.0);
          for (int c = 0; c < C; ++c) {
            const LayeredGraph& g = ctx.graph(c);
            const int ln = g.node_at(node, t);
            if (ln < 0) continue;
            for (int e : g.in_edges(ln)) terms.emplace_back(lv[c][e * P + p], 1.0);
            for (int e : g.out_edges(ln)) terms.emplace_back(lv[c][e * P + p], -1.0);
          }
          m.add_row(std::move(terms), milp::RowSense::Equal, 0.0);
        }
      if (scenario.warehouses[w].has_demand()) {
        gv[w] = m.add_continuous(0.0, scenario.warehouses[w].max_units);
        for (int p = 0; p < P; ++p)
          if (scenario.warehouses[w].demand[p] > 0)
            m.add_row({{gv[w], 1.0},
                       {sv[(w * (T + 2) + T + 1) * P + p],
                        -1.0 / scenario.warehouses[w].demand[p]}},
                      milp::RowSense::LessEqual, 0.0);
      }
    }
    std::vector<std::pair<int, double>> payoff;
    for (int w = 0; w < W; ++w)
      if (gv[w] >= 0) payoff.emplace_back(gv[w], scenario.warehouses[w].unit_payoff);
    m.add_row(std::move(payoff), milp::RowSense::GreaterEqual, target_payoff);
  }

  // Overlap bound per physical edge; wait self-loops are excluded.
  const int z = m.add_continuous(0.0, milp::kInf);
  for (int pe = 0; pe < scenario.graph.num_edges(); ++pe) {
    if (scenario.graph.edges[pe].tail == scenario.graph.edges[pe].head) continue;
    std::vector<std::pair<int, double>> terms{{z, -1.0}};
    bool any = false;
    for (int r = 0; r < n_str; ++r)
      for (int c = 0; c < C; ++c) {
        const LayeredGraph& g = ctx.graph(c);
        for (int e = 0; e < g.num_edges(); ++e)
          if (g.edge(e).phys_edge == pe) {
            terms.emplace_back(f[r][c][e], 1.0);
            any = true;
          }
      }
    if (any) m.add_row(std::move(terms), milp::RowSense::LessEqual, 0.0);
  }
  m.set_objective(milp::ObjSense::Minimize, {{z, 1.0}});

  milp::SolveOptions opts;
  opts.time_limit = time_limit;
  auto out = milp::solve(m, opts);
  if (out.status == milp::SolveStatus::Infeasible)
    throw std::invalid_argument("target payoff is not achievable with no Red");
  if (!out.has_solution())
    throw std::runtime_error(std::string("min-overlap MILP failed: ") +
                             milp::to_string(out.status));

  MinOverlapResult result;
  result.max_overlap = out.objective;
  result.optimal = out.status == milp::SolveStatus::Optimal;
  std::set<std::string> seen;
  for (int r = 0; r < n_str; ++r) {
    LogisticsPlan plan;
    plan.routes.resize(C);
    for (int c = 0; c < C; ++c) {
      const LayeredGraph& g = ctx.graph(c);
      int at = g.origin();
      while (g.node(at).t < T) {
        int next = -1;
        for (int e : g.out_edges(at))
          if (out.primal[f[r][c][e]] > 0.5) {
            next = e;
            break;
          }
        if (next < 0) throw std::logic_error("min-overlap plan extraction failed");
        plan.routes[c].push_back(g.edge(next).phys_edge);
        at = g.edge(next).head;
      }
    }
    if (!seen.insert(plan.key()).second) result.has_duplicates = true;
    result.strategy.add(std::move(plan), 1.0 / n_str);
  }
  return result;
}

std::string PriceOfRobustness::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "expected_budget";
  for (double b : budgets) os << ",true_" << b;
  os << "\n";
  for (size_t i = 0; i < budgets.size(); ++i) {
    os << budgets[i];
    for (size_t j = 0; j < budgets.size(); ++j) os << ',' << value[i][j];
    os << "\n";
  }
  return os.str();
}

PriceOfRobustness price_of_robustness(const Scenario& scenario, std::vector<double> budgets,
                                      const DoubleOracleConfig& config) {
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    throw std::invalid_argument("budgets must be ascending");
  PriceOfRobustness result;
  result.budgets = budgets;
  const int B = static_cast<int>(budgets.size());
  result.value.assign(B, std::vector<double>(B, 0.0));
  result.game_values.assign(B, 0.0);

  std::vector<BlueMixedStrategy> mixtures(B);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < B; ++i) {
    Scenario expected = scenario;
    expected.interdiction.budget = budgets[i];
    expected.finalize();
    SolveResult solved = double_oracle(expected, config);
    mixtures[i] = solved.blue;
    result.game_values[i] = solved.value;
  }
  for (int i = 0; i < B; ++i)
    for (int j = 0; j < B; ++j) {
      Scenario truth = scenario;
      truth.interdiction.budget = budgets[j];
      truth.finalize();
      result.value[i][j] = exploitability(truth, mixtures[i]);
    }
  return result;
}

}  // namespace clg
