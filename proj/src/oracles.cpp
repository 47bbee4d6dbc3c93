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

#include "clg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "clg/payoff.hpp"

namespace clg {

namespace {

using milp::Model;
using milp::ObjSense;
using milp::RowSense;

constexpr double kSupportTol = 1e-12;

std::vector<int> first_path(const LayeredGraph& g, int horizon) {
  // Depth-first search for any origin-to-horizon path.
  std::vector<int> stack;
  std::vector<size_t> cursor;
  int node = g.origin();
  while (true) {
    if (g.node(node).t == horizon) return stack;
    cursor.push_back(0);
    while (!cursor.empty()) {
      const int at = stack.empty() ? g.origin() : g.edge(stack.back()).head;
      const auto& out = g.out_edges(at);
      if (cursor.back() < out.size()) {
        const int e = out[cursor.back()];
        ++cursor.back();
        if (g.node(g.edge(e).head).t == horizon ||
            !g.out_edges(g.edge(e).head).empty()) {
          stack.push_back(e);
          if (g.node(g.edge(e).head).t == horizon) return stack;
          cursor.push_back(0);
        }
      } else {
        cursor.pop_back();
        if (stack.empty()) break;
        stack.pop_back();
      }
    }
    throw std::runtime_error("connector cannot reach the horizon (invalid scenario)");
  }
}

LogisticsPlan default_plan(const Scenario& s, const LayeredContext& ctx) {
  LogisticsPlan plan;
  plan.routes.resize(s.connectors.size());
  for (int c = 0; c < static_cast<int>(s.connectors.size()); ++c) {
    const LayeredGraph& g = ctx.graph(c);
    for (int e : first_path(g, s.horizon)) plan.routes[c].push_back(g.edge(e).phys_edge);
  }
  return plan;
}

std::vector<int> route_tail_times(const Scenario& s, int connector, const std::vector<int>& route) {
  std::vector<int> t(route.size() + 1, 0);
  for (size_t i = 0; i < route.size(); ++i)
    t[i + 1] = t[i] + s.connectors[connector].traversal_time.at(route[i]);
  return t;
}

}  // namespace

double big_m_constant(const Scenario& s, int connector) {
  const Connector& c = s.connectors[connector];
  double bound = s.total_supply_units();
  double min_w = milp::kInf, min_v = milp::kInf;
  for (const auto& p : s.packages) {
    if (p.unit_weight > 0) min_w = std::min(min_w, p.unit_weight);
    if (p.unit_volume > 0) min_v = std::min(min_v, p.unit_volume);
  }
  if (min_w < milp::kInf) bound = std::min(bound, c.weight_cap / min_w);
  if (min_v < milp::kInf) bound = std::min(bound, c.volume_cap / min_v);
  return bound;
}

double red_penalty_constant(const Scenario& s) {
  double max_p = 0.0, min_d = milp::kInf;
  for (const auto& w : s.warehouses) {
    if (!w.has_demand()) continue;
    max_p = std::max(max_p, w.unit_payoff);
    for (double d : w.demand)
      if (d > 0) min_d = std::min(min_d, d);
  }
  return max_p * std::max(1.0, min_d < milp::kInf ? 1.0 / min_d : 1.0);
}

BlueBrModel build_blue_br_model(const Scenario& s, const LayeredContext& ctx,
                                const RedMixedStrategy& red_mixture) {
  const int C = static_cast<int>(s.connectors.size());
  const int P = static_cast<int>(s.packages.size());
  const int W = static_cast<int>(s.warehouses.size());
  const int T = s.horizon;

  std::vector<const InterdictionPlan*> plans;
  std::vector<double> probs;
  for (int i = 0; i < red_mixture.size(); ++i)
    if (red_mixture.probs[i] > kSupportTol) {
      plans.push_back(&red_mixture.support[i]);
      probs.push_back(red_mixture.probs[i]);
    }
  const int K = static_cast<int>(plans.size());
  if (K == 0) throw std::invalid_argument("empty red mixture");

  BlueBrModel out;
  Model& m = out.model;

  // Binary path flows per connector with unit emission and conservation.
  out.f.resize(C);
  for (int c = 0; c < C; ++c) {
    const LayeredGraph& g = ctx.graph(c);
    out.f[c].resize(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e)
      out.f[c][e] = m.add_binary("f_" + s.connectors[c].id + "_" + std::to_string(e));
    std::vector<std::pair<int, double>> emit;
    for (int e : g.out_edges(g.origin())) emit.emplace_back(out.f[c][e], 1.0);
    m.add_row(std::move(emit), RowSense::Equal, 1.0);
    for (int v = 0; v < g.num_nodes(); ++v) {
      const int t = g.node(v).t;
      if (t < 1 || t > T - 1) continue;
      std::vector<std::pair<int, double>> terms;
      for (int e : g.in_edges(v)) terms.emplace_back(out.f[c][e], 1.0);
      for (int e : g.out_edges(v)) terms.emplace_back(out.f[c][e], -1.0);
      if (!terms.empty()) m.add_row(std::move(terms), RowSense::Equal, 0.0);
    }
  }

  std::vector<double> big_m(C);
  for (int c = 0; c < C; ++c) big_m[c] = big_m_constant(s, c);

  // Per-scenario loads, stocks and satisfied units.
  // l[i][c][e * P + p], s[i][w * (T+2) * P + t * P + p], g[i][w].
  std::vector<std::vector<std::vector<int>>> lv(K);
  std::vector<std::vector<int>> sv(K), gv(K);
  for (int i = 0; i < K; ++i) {
    lv[i].resize(C);
    for (int c = 0; c < C; ++c) {
      const LayeredGraph& g = ctx.graph(c);
      lv[i][c].resize(static_cast<size_t>(g.num_edges()) * P);
      for (int e = 0; e < g.num_edges(); ++e)
        for (int p = 0; p < P; ++p)
          lv[i][c][e * P + p] = m.add_continuous(0.0, big_m[c]);
    }
    sv[i].resize(static_cast<size_t>(W) * (T + 2) * P);
    for (int w = 0; w < W; ++w)
      for (int t = 0; t <= T + 1; ++t)
        for (int p = 0; p < P; ++p)
          sv[i][(w * (T + 2) + t) * P + p] =
              t == 0 ? m.add_continuous(s.warehouses[w].supply[p], s.warehouses[w].supply[p])
                     : m.add_continuous(0.0, milp::kInf);
    gv[i].assign(W, -1);
    for (int w = 0; w < W; ++w)
      if (s.warehouses[w].has_demand())
        gv[i][w] = m.add_continuous(0.0, s.warehouses[w].max_units);
  }

  std::vector<std::pair<int, double>> objective;
  for (int i = 0; i < K; ++i)
    for (int w = 0; w < W; ++w)
      if (gv[i][w] >= 0) objective.emplace_back(gv[i][w], probs[i] * s.warehouses[w].unit_payoff);
  m.set_objective(ObjSense::Maximize, objective);

  for (int i = 0; i < K; ++i) {
    for (int c = 0; c < C; ++c) {
      const LayeredGraph& g = ctx.graph(c);
      std::vector<char> cut(g.num_edges(), 0);
      for (int e = 0; e < g.num_edges(); ++e)
        if (plans[i]->contains(g.edge(e).phys_edge)) cut[e] = 1;

      // Conservation at non-warehouse layered nodes; interdicted incoming
      // loads are dropped (destroyed on crossing).
      for (int v = 0; v < g.num_nodes(); ++v) {
        const int t = g.node(v).t;
        if (t < 1 || t > T - 1) continue;
        if (s.warehouse_index(g.node(v).phys_node) >= 0) continue;
        for (int p = 0; p < P; ++p) {
          std::vector<std::pair<int, double>> terms;
          for (int e : g.in_edges(v))
            if (!cut[e]) terms.emplace_back(lv[i][c][e * P + p], 1.0);
          for (int e : g.out_edges(v)) terms.emplace_back(lv[i][c][e * P + p], -1.0);
          if (!terms.empty()) m.add_row(std::move(terms), RowSense::Equal, 0.0);
        }
      }

      // Big-M link and per-edge capacities.
      for (int e = 0; e < g.num_edges(); ++e) {
        for (int p = 0; p < P; ++p)
          m.add_row({{lv[i][c][e * P + p], 1.0}, {out.f[c][e], -big_m[c]}}, RowSense::LessEqual,
                    0.0);
        std::vector<std::pair<int, double>> weight, volume;
        for (int p = 0; p < P; ++p) {
          if (s.packages[p].unit_weight != 0)
            weight.emplace_back(lv[i][c][e * P + p], s.packages[p].unit_weight);
          if (s.packages[p].unit_volume != 0)
            volume.emplace_back(lv[i][c][e * P + p], s.packages[p].unit_volume);
        }
        if (!weight.empty())
          m.add_row(std::move(weight), RowSense::LessEqual, s.connectors[c].weight_cap);
        if (!volume.empty())
          m.add_row(std::move(volume), RowSense::LessEqual, s.connectors[c].volume_cap);
      }

      // Load cancelling: crossing an interdicted edge kills every later
      // warehouse pickup of this connector.
      std::vector<int> warehouse_out;
      for (int e = 0; e < g.num_edges(); ++e)
        if (s.warehouse_index(g.node(g.edge(e).tail).phys_node) >= 0) warehouse_out.push_back(e);
      for (int e = 0; e < g.num_edges(); ++e) {
        if (!cut[e]) continue;
        std::vector<int> downstream;
        for (int e2 : warehouse_out)
          if (e2 != e && (g.edge(e).head == g.edge(e2).tail || g.reachable_between(e, e2)))
            downstream.push_back(e2);
        if (downstream.empty()) continue;
        const double m_row = static_cast<double>(downstream.size()) * P * big_m[c];
        std::vector<std::pair<int, double>> terms;
        for (int e2 : downstream)
          for (int p = 0; p < P; ++p) terms.emplace_back(lv[i][c][e2 * P + p], 1.0);
        terms.emplace_back(out.f[c][e], m_row);
        m.add_row(std::move(terms), RowSense::LessEqual, m_row);
      }
    }

    // Warehouse stock conservation across layers.
    for (int w = 0; w < W; ++w) {
      const int node = s.warehouses[w].node;
      for (int t = 0; t <= T; ++t) {
        for (int p = 0; p < P; ++p) {
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(sv[i][(w * (T + 2) + t) * P + p], 1.0);
          terms.emplace_back(sv[i][(w * (T + 2) + t + 1) * P + p], -1.0);
          for (int c = 0; c < C; ++c) {
            const LayeredGraph& g = ctx.graph(c);
            const int ln = g.node_at(node, t);
            if (ln < 0) continue;
            for (int e : g.in_edges(ln))
              if (!plans[i]->contains(g.edge(e).phys_edge))
                terms.emplace_back(lv[i][c][e * P + p], 1.0);
            for (int e : g.out_edges(ln)) terms.emplace_back(lv[i][c][e * P + p], -1.0);
          }
          m.add_row(std::move(terms), RowSense::Equal, 0.0);
        }
      }
      // Leontief linearization.
      if (gv[i][w] >= 0)
        for (int p = 0; p < P; ++p)
          if (s.warehouses[w].demand[p] > 0)
            m.add_row({{gv[i][w], 1.0},
                       {sv[i][(w * (T + 2) + T + 1) * P + p], -1.0 / s.warehouses[w].demand[p]}},
                      RowSense::LessEqual, 0.0);
    }
  }

  out.l = std::move(lv);
  out.s = std::move(sv);
  out.g = std::move(gv);
  out.probs = std::move(probs);
  return out;
}

namespace {

LogisticsPlan extract_plan(const Scenario& s, const LayeredContext& ctx, const BlueBrModel& model,
                           const std::vector<double>& primal) {
  LogisticsPlan plan;
  plan.routes.resize(s.connectors.size());
  for (int c = 0; c < static_cast<int>(s.connectors.size()); ++c) {
    const LayeredGraph& g = ctx.graph(c);
    int at = g.origin();
    int guard = 0;
    while (g.node(at).t < s.horizon) {
      if (++guard > g.num_edges() + 1)
        throw std::logic_error("path extraction looped; non-binary flow solution");
      int next = -1;
      for (int e : g.out_edges(at))
        if (primal[model.f[c][e]] > 0.5) {
          next = e;
          break;
        }
      if (next < 0) throw std::logic_error("path extraction failed; flow conservation broken");
      plan.routes[c].push_back(g.edge(next).phys_edge);
      at = g.edge(next).head;
    }
  }
  return plan;
}

std::vector<double> blue_warm_vector(const Scenario& s, const LayeredContext& ctx,
                                     const BlueBrModel& model, const RedMixedStrategy& mixture,
                                     const LogisticsPlan& plan) {
  std::vector<double> x(model.model.num_vars(), 0.0);
  const int P = static_cast<int>(s.packages.size());
  const int T = s.horizon;
  std::vector<std::vector<int>> layered(s.connectors.size());
  for (int c = 0; c < static_cast<int>(s.connectors.size()); ++c) {
    layered[c] = ctx.route_to_layered(c, plan.routes[c]);
    for (int e : layered[c]) x[model.f[c][e]] = 1.0;
  }
  int i = 0;
  for (int k = 0; k < mixture.size(); ++k) {
    if (mixture.probs[k] <= kSupportTol) continue;
    auto [value, flow] = recourse_utility(s, plan, mixture.support[k]);
    (void)value;
    for (size_t c = 0; c < flow.loads.size(); ++c)
      for (size_t pos = 0; pos < flow.loads[c].size(); ++pos)
        for (int p = 0; p < P; ++p)
          x[model.l[i][c][layered[c][pos] * P + p]] = flow.loads[c][pos][p];
    for (size_t w = 0; w < flow.stocks.size(); ++w)
      for (int t = 0; t <= T + 1; ++t)
        for (int p = 0; p < P; ++p) x[model.s[i][(w * (T + 2) + t) * P + p]] = flow.stocks[w][t][p];
    for (size_t w = 0; w < flow.satisfied.size(); ++w)
      if (model.g[i][w] >= 0) x[model.g[i][w]] = flow.satisfied[w];
    ++i;
  }
  return x;
}

}  // namespace

BlueBestResponse blue_best_response(const Scenario& s, const LayeredContext& ctx,
                                    const RedMixedStrategy& red_mixture,
                                    const OracleOptions& options, const LogisticsPlan* warm_plan) {
  BlueBrModel model = build_blue_br_model(s, ctx, red_mixture);
  milp::SolveOptions opts;
  opts.time_limit = options.time_limit;
  opts.mip_rel_gap = options.mip_rel_gap;
  opts.mip_abs_gap = options.mip_abs_gap;
  const LogisticsPlan warm = warm_plan ? *warm_plan : default_plan(s, ctx);
  opts.warm_start = blue_warm_vector(s, ctx, model, red_mixture, warm);
  auto out = milp::solve(model.model, opts);
  if (!out.has_solution()) {
    if (out.status == milp::SolveStatus::Error && options.time_limit < milp::kInf) {
      // No incumbent inside the budget; fall back to an exact solve.
      opts.time_limit = milp::kInf;
      out = milp::solve(model.model, opts);
    }
    if (!out.has_solution())
      throw std::runtime_error(std::string("BlueBR MILP failed: ") + milp::to_string(out.status) +
                               (out.message.empty() ? "" : " (" + out.message + ")"));
  }
  BlueBestResponse result;
  result.plan = extract_plan(s, ctx, model, out.primal);
  result.value = out.objective;
  result.bound = out.best_bound;
  result.optimal = out.status == milp::SolveStatus::Optimal;
  return result;
}

namespace {

// Inner LP catalogue for the RedBR dualization: maximize c(y) . v subject to
// A v {=, <=} b, v >= 0, where only the objective depends on y.
struct InnerCatalogue {
  struct Row {
    std::vector<std::pair<int, double>> terms;
    bool eq;
    double rhs;
  };
  int num_vars = 0;
  std::vector<Row> rows;
  std::vector<double> c0;
  // Per variable: (interdictable-edge ordinal, coefficient) objective terms.
  std::vector<std::vector<std::pair<int, double>>> coupling;
};

InnerCatalogue build_inner_catalogue(const Scenario& s, const BlueMixedStrategy& mixture) {
  const int C = static_cast<int>(s.connectors.size());
  const int P = static_cast<int>(s.packages.size());
  const int W = static_cast<int>(s.warehouses.size());
  const int T = s.horizon;
  const double z = red_penalty_constant(s);

  std::vector<const LogisticsPlan*> plans;
  std::vector<double> probs;
  for (int i = 0; i < mixture.size(); ++i)
    if (mixture.probs[i] > kSupportTol) {
      plans.push_back(&mixture.support[i]);
      probs.push_back(mixture.probs[i]);
    }
  const int K = static_cast<int>(plans.size());
  if (K == 0) throw std::invalid_argument("empty blue mixture");

  std::map<int, int> ordinal;  // physical edge -> interdictable ordinal
  for (size_t o = 0; o < s.interdiction.interdictable_edges.size(); ++o)
    ordinal[s.interdiction.interdictable_edges[o]] = static_cast<int>(o);

  InnerCatalogue cat;
  auto add_var = [&cat](double obj) {
    cat.c0.push_back(obj);
    cat.coupling.emplace_back();
    return cat.num_vars++;
  };

  // Variable blocks per scenario.
  std::vector<std::vector<std::vector<int>>> lv(K);  // [i][c][pos * P + p]
  std::vector<std::vector<int>> sv(K), gv(K);
  for (int i = 0; i < K; ++i) {
    lv[i].resize(C);
    for (int c = 0; c < C; ++c) {
      const auto& route = plans[i]->routes[c];
      lv[i][c].resize(route.size() * P);
      for (size_t pos = 0; pos < route.size(); ++pos)
        for (int p = 0; p < P; ++p) lv[i][c][pos * P + p] = add_var(0.0);
    }
    sv[i].resize(static_cast<size_t>(W) * (T + 2) * P);
    for (int w = 0; w < W; ++w)
      for (int t = 0; t <= T + 1; ++t)
        for (int p = 0; p < P; ++p) sv[i][(w * (T + 2) + t) * P + p] = add_var(0.0);
    gv[i].assign(W, -1);
    for (int w = 0; w < W; ++w)
      if (s.warehouses[w].has_demand())
        gv[i][w] = add_var(probs[i] * s.warehouses[w].unit_payoff);
  }

  // Penalty coupling: load at position k is charged Z y(E(e_j)) once for
  // every interdictable position j <= k of the same route.
  for (int i = 0; i < K; ++i)
    for (int c = 0; c < C; ++c) {
      const auto& route = plans[i]->routes[c];
      for (size_t j = 0; j < route.size(); ++j) {
        auto it = ordinal.find(route[j]);
        if (it == ordinal.end()) continue;
        for (size_t k = j; k < route.size(); ++k)
          for (int p = 0; p < P; ++p)
            cat.coupling[lv[i][c][k * P + p]].emplace_back(it->second, -z);
      }
    }

  auto add_row = [&cat](std::vector<std::pair<int, double>> terms, bool eq, double rhs) {
    cat.rows.push_back(InnerCatalogue::Row{std::move(terms), eq, rhs});
  };

  for (int i = 0; i < K; ++i) {
    // Initial stocks.
    for (int w = 0; w < W; ++w)
      for (int p = 0; p < P; ++p)
        add_row({{sv[i][(w * (T + 2) + 0) * P + p], 1.0}}, true, s.warehouses[w].supply[p]);

    for (int c = 0; c < C; ++c) {
      const auto& route = plans[i]->routes[c];
      const std::vector<int> times = route_tail_times(s, c, route);
      // Pass-through at non-warehouse stops.
      for (size_t pos = 0; pos + 1 < route.size(); ++pos) {
        if (s.warehouse_index(s.graph.edges[route[pos]].head) >= 0) continue;
        for (int p = 0; p < P; ++p)
          add_row({{lv[i][c][pos * P + p], 1.0}, {lv[i][c][(pos + 1) * P + p], -1.0}}, true, 0.0);
      }
      // Capacities.
      for (size_t pos = 0; pos < route.size(); ++pos) {
        std::vector<std::pair<int, double>> weight, volume;
        for (int p = 0; p < P; ++p) {
          if (s.packages[p].unit_weight != 0)
            weight.emplace_back(lv[i][c][pos * P + p], s.packages[p].unit_weight);
          if (s.packages[p].unit_volume != 0)
            volume.emplace_back(lv[i][c][pos * P + p], s.packages[p].unit_volume);
        }
        if (!weight.empty()) add_row(std::move(weight), false, s.connectors[c].weight_cap);
        if (!volume.empty()) add_row(std::move(volume), false, s.connectors[c].volume_cap);
      }
    }

    // Warehouse conservation; full plans, no interdiction dropping here (the
    // penalty term does that work).
    for (int w = 0; w < W; ++w) {
      const int node = s.warehouses[w].node;
      for (int t = 0; t <= T; ++t)
        for (int p = 0; p < P; ++p) {
          std::vector<std::pair<int, double>> terms;
          terms.emplace_back(sv[i][(w * (T + 2) + t) * P + p], 1.0);
          terms.emplace_back(sv[i][(w * (T + 2) + t + 1) * P + p], -1.0);
          for (int c = 0; c < C; ++c) {
            const auto& route = plans[i]->routes[c];
            const std::vector<int> times = route_tail_times(s, c, route);
            for (size_t pos = 0; pos < route.size(); ++pos) {
              const Edge& e = s.graph.edges[route[pos]];
              if (e.head == node && times[pos + 1] == t)
                terms.emplace_back(lv[i][c][pos * P + p], 1.0);
              if (e.tail == node && times[pos] == t)
                terms.emplace_back(lv[i][c][pos * P + p], -1.0);
            }
          }
          add_row(std::move(terms), true, 0.0);
        }
      // g link rows and cap.
      if (gv[i][w] >= 0) {
        for (int p = 0; p < P; ++p)
          if (s.warehouses[w].demand[p] > 0)
            add_row({{gv[i][w], 1.0},
                     {sv[i][(w * (T + 2) + T + 1) * P + p], -1.0 / s.warehouses[w].demand[p]}},
                    false, 0.0);
        add_row({{gv[i][w], 1.0}}, false, s.warehouses[w].max_units);
      }
    }
  }
  return cat;
}

}  // namespace

milp::Model build_red_inner_model(const Scenario& s, const BlueMixedStrategy& blue_mixture,
                                  const InterdictionPlan& interdiction) {
  InnerCatalogue cat = build_inner_catalogue(s, blue_mixture);
  Model m;
  for (int j = 0; j < cat.num_vars; ++j) m.add_continuous(0.0, milp::kInf);
  for (const auto& row : cat.rows)
    m.add_row(row.terms, row.eq ? RowSense::Equal : RowSense::LessEqual, row.rhs);
  m.set_objective(ObjSense::Maximize, {});
  for (int j = 0; j < cat.num_vars; ++j) {
    double coef = cat.c0[j];
    for (const auto& [o, w] : cat.coupling[j])
      if (interdiction.contains(s.interdiction.interdictable_edges[o])) coef += w;
    if (coef != 0.0) m.set_obj_coef(j, coef);
  }
  return m;
}

RedBrModel build_red_br_model(const Scenario& s, const BlueMixedStrategy& blue_mixture) {
  InnerCatalogue cat = build_inner_catalogue(s, blue_mixture);
  const int E = static_cast<int>(s.interdiction.interdictable_edges.size());

  RedBrModel out;
  Model& m = out.model;
  // One dual multiplier per inner row: free for equalities, nonnegative for
  // inequalities (inner maximization).
  std::vector<std::pair<int, double>> objective;
  for (size_t r = 0; r < cat.rows.size(); ++r) {
    const int var = m.add_continuous(cat.rows[r].eq ? -milp::kInf : 0.0, milp::kInf);
    if (cat.rows[r].rhs != 0.0) objective.emplace_back(var, cat.rows[r].rhs);
  }
  out.num_dual_rows = static_cast<int>(cat.rows.size());
  out.y.resize(E);
  for (int o = 0; o < E; ++o)
    out.y[o] = m.add_binary("y_" + s.graph.edges[s.interdiction.interdictable_edges[o]].id);
  m.set_objective(ObjSense::Minimize, objective);

  // Transpose: one dual-feasibility row per primal variable,
  // A^T mu - F y >= c0.
  std::vector<std::vector<std::pair<int, double>>> columns(cat.num_vars);
  for (size_t r = 0; r < cat.rows.size(); ++r)
    for (const auto& [j, a] : cat.rows[r].terms) columns[j].emplace_back(static_cast<int>(r), a);
  for (int j = 0; j < cat.num_vars; ++j) {
    std::vector<std::pair<int, double>> terms = columns[j];
    std::map<int, double> ys;
    for (const auto& [o, w] : cat.coupling[j]) ys[o] -= w;
    for (const auto& [o, w] : ys) terms.emplace_back(out.y[o], w);
    m.add_row(std::move(terms), RowSense::GreaterEqual, cat.c0[j]);
  }

  // Budget.
  std::vector<std::pair<int, double>> budget;
  for (int o = 0; o < E; ++o)
    budget.emplace_back(out.y[o],
                        *s.graph.edges[s.interdiction.interdictable_edges[o]].interdiction_cost);
  if (!budget.empty()) m.add_row(std::move(budget), RowSense::LessEqual, s.interdiction.budget);
  return out;
}

RedBestResponse red_best_response(const Scenario& s, const LayeredContext& ctx,
                                  const BlueMixedStrategy& blue_mixture,
                                  const OracleOptions& options, const InterdictionPlan* warm_plan) {
  (void)ctx;
  RedBrModel model = build_red_br_model(s, blue_mixture);
  milp::SolveOptions opts;
  opts.time_limit = options.time_limit;
  opts.mip_rel_gap = options.mip_rel_gap;
  opts.mip_abs_gap = options.mip_abs_gap;

  // Warm start: duals of the inner LP at a candidate interdiction.
  const InterdictionPlan warm = warm_plan ? *warm_plan : InterdictionPlan{};
  {
    Model inner = build_red_inner_model(s, blue_mixture, warm);
    milp::SolveOptions inner_opts;
    inner_opts.want_duals = true;
    auto inner_out = milp::solve(inner, inner_opts);
    if (inner_out.status == milp::SolveStatus::Optimal) {
      std::vector<double> start(model.model.num_vars(), 0.0);
      for (int r = 0; r < model.num_dual_rows; ++r) start[r] = inner_out.duals[r];
      for (size_t o = 0; o < model.y.size(); ++o)
        start[model.y[o]] = warm.contains(s.interdiction.interdictable_edges[o]) ? 1.0 : 0.0;
      opts.warm_start = std::move(start);
    }
  }

  auto out = milp::solve(model.model, opts);
  if (!out.has_solution()) {
    if (out.status == milp::SolveStatus::Error && options.time_limit < milp::kInf) {
      opts.time_limit = milp::kInf;
      out = milp::solve(model.model, opts);
    }
    if (!out.has_solution())
      throw std::runtime_error(std::string("RedBR MILP failed: ") + milp::to_string(out.status) +
                               (out.message.empty() ? "" : " (" + out.message + ")"));
  }

  RedBestResponse result;
  std::vector<int> edges;
  for (size_t o = 0; o < model.y.size(); ++o)
    if (out.primal[model.y[o]] > 0.5) edges.push_back(s.interdiction.interdictable_edges[o]);
  result.plan = make_interdiction_plan(s, std::move(edges));
  result.value = out.objective;
  result.bound = out.best_bound;
  result.optimal = out.status == milp::SolveStatus::Optimal;
  return result;
}

}  // namespace clg
