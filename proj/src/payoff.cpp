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

#include "clg/payoff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "clg/milp.hpp"

namespace clg {

double leontief_value(const Scenario& s, const std::vector<std::vector<double>>& stocks) {
  double total = 0.0;
  for (size_t w = 0; w < s.warehouses.size(); ++w) {
    const Warehouse& wh = s.warehouses[w];
    if (!wh.has_demand()) continue;
    double ratio = milp::kInf;
    for (size_t p = 0; p < s.packages.size(); ++p)
      if (wh.demand[p] > 0) ratio = std::min(ratio, stocks[w][p] / wh.demand[p]);
    total += wh.unit_payoff * std::min(ratio, wh.max_units);
  }
  return total;
}

namespace {

// Tail times per route position, from the traversal times.
std::vector<int> route_times(const Scenario& s, int connector, const std::vector<int>& route) {
  std::vector<int> t(route.size() + 1, 0);
  for (size_t i = 0; i < route.size(); ++i)
    t[i + 1] = t[i] + s.connectors[connector].traversal_time.at(route[i]);
  return t;
}

}  // namespace

std::pair<double, FlowSolution> recourse_utility(const Scenario& s, const LogisticsPlan& plan,
                                                 const InterdictionPlan& interdiction) {
  const TruncatedPlan trunc = truncate_plan(plan, interdiction);
  const int C = static_cast<int>(s.connectors.size());
  const int P = static_cast<int>(s.packages.size());
  const int W = static_cast<int>(s.warehouses.size());
  const int T = s.horizon;

  milp::Model model;
  // Load variables per surviving route edge.
  std::vector<std::vector<std::vector<int>>> lv(C);
  std::vector<std::vector<int>> times(C);
  for (int c = 0; c < C; ++c) {
    const auto& edges = trunc.routes[c].edges;
    times[c] = route_times(s, c, edges);
    lv[c].resize(edges.size());
    for (size_t pos = 0; pos < edges.size(); ++pos) {
      lv[c][pos].resize(P);
      for (int p = 0; p < P; ++p) lv[c][pos][p] = model.add_continuous(0.0, milp::kInf);
    }
  }
  // Stocks, with the initial layer pinned to the supply.
  std::vector<std::vector<std::vector<int>>> sv(W);
  for (int w = 0; w < W; ++w) {
    sv[w].assign(T + 2, std::vector<int>(P));
    for (int t = 0; t <= T + 1; ++t)
      for (int p = 0; p < P; ++p)
        sv[w][t][p] = t == 0 ? model.add_continuous(s.warehouses[w].supply[p],
                                                    s.warehouses[w].supply[p])
                             : model.add_continuous(0.0, milp::kInf);
  }
  std::vector<int> gv(W, -1);
  std::vector<std::pair<int, double>> objective;
  for (int w = 0; w < W; ++w) {
    if (!s.warehouses[w].has_demand()) continue;
    gv[w] = model.add_continuous(0.0, s.warehouses[w].max_units);
    objective.emplace_back(gv[w], s.warehouses[w].unit_payoff);
  }
  model.set_objective(milp::ObjSense::Maximize, objective);

  // Pass-through equalities at non-warehouse nodes.
  for (int c = 0; c < C; ++c) {
    const auto& edges = trunc.routes[c].edges;
    for (size_t pos = 0; pos + 1 < edges.size(); ++pos) {
      const int head = s.graph.edges[edges[pos]].head;
      if (s.warehouse_index(head) >= 0) continue;
      for (int p = 0; p < P; ++p)
        model.add_row({{lv[c][pos][p], 1.0}, {lv[c][pos + 1][p], -1.0}}, milp::RowSense::Equal,
                      0.0);
    }
  }

  // Warehouse stock conservation; a destroyed connector's final edge never
  // delivers its load.
  for (int w = 0; w < W; ++w) {
    const int node = s.warehouses[w].node;
    for (int t = 0; t <= T; ++t) {
      for (int p = 0; p < P; ++p) {
        std::vector<std::pair<int, double>> terms;
        terms.emplace_back(sv[w][t][p], 1.0);
        terms.emplace_back(sv[w][t + 1][p], -1.0);
        for (int c = 0; c < C; ++c) {
          const auto& route = trunc.routes[c];
          for (size_t pos = 0; pos < route.edges.size(); ++pos) {
            const Edge& e = s.graph.edges[route.edges[pos]];
            const bool lost = route.destroyed && pos + 1 == route.edges.size();
            if (e.head == node && times[c][pos + 1] == t && !lost)
              terms.emplace_back(lv[c][pos][p], 1.0);
            if (e.tail == node && times[c][pos] == t) terms.emplace_back(lv[c][pos][p], -1.0);
          }
        }
        model.add_row(std::move(terms), milp::RowSense::Equal, 0.0);
      }
    }
  }

  // Weight and volume capacities per carried edge.
  for (int c = 0; c < C; ++c) {
    for (size_t pos = 0; pos < trunc.routes[c].edges.size(); ++pos) {
      std::vector<std::pair<int, double>> weight, volume;
      for (int p = 0; p < P; ++p) {
        if (s.packages[p].unit_weight != 0)
          weight.emplace_back(lv[c][pos][p], s.packages[p].unit_weight);
        if (s.packages[p].unit_volume != 0)
          volume.emplace_back(lv[c][pos][p], s.packages[p].unit_volume);
      }
      if (!weight.empty())
        model.add_row(std::move(weight), milp::RowSense::LessEqual, s.connectors[c].weight_cap);
      if (!volume.empty())
        model.add_row(std::move(volume), milp::RowSense::LessEqual, s.connectors[c].volume_cap);
    }
  }

  // Leontief linearization on terminal stocks.
  for (int w = 0; w < W; ++w) {
    if (gv[w] < 0) continue;
    for (int p = 0; p < P; ++p)
      if (s.warehouses[w].demand[p] > 0)
        model.add_row({{gv[w], 1.0}, {sv[w][T + 1][p], -1.0 / s.warehouses[w].demand[p]}},
                      milp::RowSense::LessEqual, 0.0);
  }

  auto out = milp::solve(model);
  if (out.status != milp::SolveStatus::Optimal)
    throw std::logic_error(std::string("recourse LP not optimal (") +
                           milp::to_string(out.status) + "): construction bug");

  FlowSolution flow;
  flow.loads.resize(C);
  for (int c = 0; c < C; ++c) {
    flow.loads[c].resize(lv[c].size());
    for (size_t pos = 0; pos < lv[c].size(); ++pos) {
      flow.loads[c][pos].resize(P);
      for (int p = 0; p < P; ++p) flow.loads[c][pos][p] = out.primal[lv[c][pos][p]];
    }
  }
  flow.stocks.resize(W);
  for (int w = 0; w < W; ++w) {
    flow.stocks[w].assign(T + 2, std::vector<double>(P));
    for (int t = 0; t <= T + 1; ++t)
      for (int p = 0; p < P; ++p) flow.stocks[w][t][p] = out.primal[sv[w][t][p]];
  }
  flow.satisfied.assign(W, 0.0);
  for (int w = 0; w < W; ++w)
    if (gv[w] >= 0) flow.satisfied[w] = out.primal[gv[w]];
  return {out.objective, std::move(flow)};
}

std::string PayoffEvaluator::cache_key(const LogisticsPlan& blue,
                                       const InterdictionPlan& red) const {
  // Timed warehouse-visit signature of the truncated routes: load recourse
  // cannot distinguish routes that touch the same warehouses at the same
  // times.
  const Scenario& s = *scenario_;
  std::ostringstream os;
  for (size_t c = 0; c < blue.routes.size(); ++c) {
    int t = 0;
    os << s.warehouse_index(s.connectors[c].initial_location) << "@0";
    for (int e : blue.routes[c]) {
      const bool cut = red.contains(e);
      t += s.connectors[c].traversal_time.at(e);
      if (!cut) {
        const int w = s.warehouse_index(s.graph.edges[e].head);
        if (w >= 0) os << ',' << w << '@' << t;
      }
      if (cut) break;
    }
    os << '|';
  }
  return os.str();
}

bool PayoffEvaluator::value_if_cached(const std::string& key, double& out) {
  auto it = cache_.find(key);
  if (it == cache_.end()) return false;
  ++hits_;
  out = it->second;
  return true;
}

double PayoffEvaluator::value(const LogisticsPlan& blue, const InterdictionPlan& red) {
  const std::string key = cache_key(blue, red);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  const double v = recourse_utility(*scenario_, blue, red).first;
  cache_.emplace(key, v);
  return v;
}

PayoffMatrix payoff_matrix(const Scenario& scenario, PayoffEvaluator& evaluator,
                           std::vector<LogisticsPlan> blue_plans,
                           std::vector<InterdictionPlan> red_plans) {
  PayoffMatrix matrix;
  matrix.rows = std::move(blue_plans);
  matrix.cols = std::move(red_plans);
  const int R = static_cast<int>(matrix.rows.size());
  const int C = static_cast<int>(matrix.cols.size());
  matrix.entries.assign(static_cast<size_t>(R) * C, 0.0);

  // Resolve cache hits first; compute distinct missing cells, possibly in
  // parallel, then publish serially.
  struct Missing {
    int row, col;
    double value = 0.0;
  };
  std::vector<Missing> missing;
  std::unordered_map<std::string, int> key_to_slot;
  std::vector<std::pair<size_t, int>> cell_slots;  // entry index -> missing slot
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) {
      const std::string key = evaluator.cache_key(matrix.rows[i], matrix.cols[j]);
      auto [it, inserted] = key_to_slot.try_emplace(key, static_cast<int>(missing.size()));
      if (inserted) {
        double cached;
        if (evaluator.value_if_cached(key, cached)) {
          missing.push_back({i, j, cached});
          missing.back().col = -1;  // already resolved
        } else {
          missing.push_back({i, j});
        }
      }
      cell_slots.emplace_back(static_cast<size_t>(i) * C + j, it->second);
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 0; k < static_cast<int>(missing.size()); ++k) {
    if (missing[k].col < 0) continue;
    missing[k].value =
        recourse_utility(scenario, matrix.rows[missing[k].row], matrix.cols[missing[k].col])
            .first;
  }
  for (const auto& m : missing)
    if (m.col >= 0)
      evaluator.publish(evaluator.cache_key(matrix.rows[m.row], matrix.cols[m.col]), m.value);
  for (const auto& [entry, slot] : cell_slots) matrix.entries[entry] = missing[slot].value;
  return matrix;
}

std::string PayoffMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "blue_plan";
  for (size_t j = 0; j < cols.size(); ++j) os << ",red_" << j;
  os << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    os << "blue_" << i;
    for (size_t j = 0; j < cols.size(); ++j) os << ',' << at(static_cast<int>(i), static_cast<int>(j));
    os << "\n";
  }
  return os.str();
}

}  // namespace clg
