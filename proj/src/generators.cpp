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

#include "clg/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "clg/rng.hpp"

namespace clg {

namespace {

std::string grid_node(int r, int c) { return "n" + std::to_string(r) + "_" + std::to_string(c); }

void allow_all_edges(Scenario& s, Connector& c) {
  for (int e = 0; e < s.graph.num_edges(); ++e) c.traversal_time[e] = 1;
}

}  // namespace

Scenario generate_grid_world(const GridOptions& opt) {
  if (opt.n < 3) throw std::invalid_argument("grid side must be at least 3");
  const int n = opt.n;

  // Independent draw streams so that e.g. switching the cost mode does not
  // reshuffle which edges get dropped. Draw order within a stream is
  // row-major over nodes, right neighbor before down neighbor, forward
  // direction before backward.
  Rng base(opt.seed);
  Rng drop_rng = base.fork(1);
  Rng cost_rng = base.fork(2);
  Rng payoff_rng = base.fork(3);

  Scenario s;
  s.horizon = opt.horizon;
  s.interdiction.budget = opt.budget;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) s.graph.add_node(grid_node(r, c));

  auto add_pair = [&](int r1, int c1, int r2, int c2) {
    const bool keep = !drop_rng.bernoulli(opt.edge_drop_prob);
    const double cost_fwd = opt.uniform_costs ? 1.0 : cost_rng.uniform_int(1, 5);
    const double cost_bwd = opt.uniform_costs ? 1.0 : cost_rng.uniform_int(1, 5);
    if (!keep) return;
    s.graph.add_edge(grid_node(r1, c1), grid_node(r2, c2),
                     "e_" + grid_node(r1, c1) + "__" + grid_node(r2, c2), cost_fwd);
    s.graph.add_edge(grid_node(r2, c2), grid_node(r1, c1),
                     "e_" + grid_node(r2, c2) + "__" + grid_node(r1, c1), cost_bwd);
  };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) add_pair(r, c, r, c + 1);
      if (r + 1 < n) add_pair(r, c, r + 1, c);
    }
  // Wait loops, not interdictable.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      s.graph.add_edge(grid_node(r, c), grid_node(r, c), "loop_" + grid_node(r, c));

  s.packages.push_back(Package{"A", 1.0, 1.0});
  s.packages.push_back(Package{"B", 1.0, 1.0});

  auto warehouse = [&](int r, int c, double sa, double sb, double da, double db, double payoff,
                       double max_units) {
    Warehouse w;
    w.node = s.graph.node(grid_node(r, c));
    w.supply = {sa, sb};
    w.demand = {da, db};
    w.unit_payoff = payoff;
    w.max_units = max_units;
    s.warehouses.push_back(w);
  };
  const int center = n / 2;
  const double payoff_a = payoff_rng.uniform_real(1.0, 2.0);
  const double payoff_b = payoff_rng.uniform_real(1.0, 2.0);
  warehouse(0, 0, 4, 1, 0, 0, 0, 0);
  warehouse(n - 1, n - 1, 1, 3, 0, 0, 0, 0);
  warehouse(center, center, 1, 1, 0, 0, 0, 0);
  warehouse(0, n - 1, 0, 0, 3, 2, payoff_a, 1);
  warehouse(n - 1, 0, 0, 0, 3, 2, payoff_b, 1);

  // Truck capacity equal to the total supply mass never binds.
  const double cap = 4 + 1 + 1 + 3 + 1 + 1;
  for (int t = 0; t < 2; ++t) {
    Connector truck;
    truck.id = "truck" + std::to_string(t + 1);
    truck.initial_location = s.graph.node(t == 0 ? grid_node(0, 0) : grid_node(n - 1, n - 1));
    truck.weight_cap = cap;
    truck.volume_cap = cap;
    allow_all_edges(s, truck);
    s.connectors.push_back(std::move(truck));
  }

  s.finalize();
  return s;
}

Scenario generate_sat_gadget(const CnfFormula& cnf) {
  if (cnf.empty()) throw std::invalid_argument("empty formula");
  int n = 0;
  for (const auto& clause : cnf) {
    if (clause.empty() || clause.size() > 3)
      throw std::invalid_argument("clauses must have 1 to 3 literals");
    for (int lit : clause) {
      if (lit == 0) throw std::invalid_argument("literal 0 is not valid");
      n = std::max(n, std::abs(lit));
    }
  }
  const int k = static_cast<int>(cnf.size());

  Scenario s;
  s.horizon = 2 * n;
  s.interdiction.budget = 1.0;

  for (int i = 1; i <= n; ++i) {
    s.graph.add_node("x" + std::to_string(i));
    s.graph.add_node("T" + std::to_string(i));
    s.graph.add_node("F" + std::to_string(i));
  }
  for (int j = 1; j <= k; ++j) s.graph.add_node("C" + std::to_string(j));
  s.graph.add_node("t");

  auto assign_node = [](int lit) {
    return (lit > 0 ? "T" : "F") + std::to_string(std::abs(lit));
  };

  // Chain edges for the assignment connector; every edge costs 2 except the
  // terminal loop, so a budget of 1 makes Red's action space trivial.
  std::vector<int> chain_edges;
  auto chain = [&](const std::string& a, const std::string& b) {
    chain_edges.push_back(s.graph.add_edge(a, b, a + "__" + b, 2.0));
  };
  for (int i = 1; i <= n; ++i) {
    const std::string xi = "x" + std::to_string(i);
    const std::string next = i < n ? "x" + std::to_string(i + 1) : "t";
    chain(xi, "T" + std::to_string(i));
    chain(xi, "F" + std::to_string(i));
    chain("T" + std::to_string(i), next);
    chain("F" + std::to_string(i), next);
  }
  chain_edges.push_back(s.graph.add_edge("t", "t", "loop_t", 1.0));

  // Clause connector edges: one hop to a satisfying assignment node, then
  // wait loops there.
  std::vector<std::vector<int>> clause_edges(k);
  std::vector<int> assign_loops;
  for (int i = 1; i <= n; ++i) {
    assign_loops.push_back(s.graph.add_edge("T" + std::to_string(i), "T" + std::to_string(i),
                                            "loop_T" + std::to_string(i), 2.0));
    assign_loops.push_back(s.graph.add_edge("F" + std::to_string(i), "F" + std::to_string(i),
                                            "loop_F" + std::to_string(i), 2.0));
  }
  for (int j = 0; j < k; ++j) {
    const std::string cj = "C" + std::to_string(j + 1);
    std::set<std::string> targets;
    for (int lit : cnf[j]) targets.insert(assign_node(lit));
    for (const std::string& target : targets)
      clause_edges[j].push_back(s.graph.add_edge(cj, target, cj + "__" + target, 2.0));
    for (int loop : assign_loops) clause_edges[j].push_back(loop);
  }

  s.packages.push_back(Package{"p", 1.0, 1.0});

  Connector assign;
  assign.id = "assign";
  assign.initial_location = s.graph.node("x1");
  assign.weight_cap = assign.volume_cap = k;
  for (int e : chain_edges) assign.traversal_time[e] = 1;
  s.connectors.push_back(std::move(assign));
  for (int j = 0; j < k; ++j) {
    Connector cc;
    cc.id = "clause" + std::to_string(j + 1);
    cc.initial_location = s.graph.node("C" + std::to_string(j + 1));
    cc.weight_cap = cc.volume_cap = 1;
    for (int e : clause_edges[j]) cc.traversal_time[e] = 1;
    s.connectors.push_back(std::move(cc));
  }

  auto warehouse = [&](const std::string& node, double supply, double demand, double payoff,
                       double max_units) {
    Warehouse w;
    w.node = s.graph.node(node);
    w.supply = {supply};
    w.demand = {demand};
    w.unit_payoff = payoff;
    w.max_units = max_units;
    s.warehouses.push_back(w);
  };
  warehouse("x1", 0, 0, 0, 0);
  warehouse("t", 0, k, 1.0, 1.0);
  for (int j = 1; j <= k; ++j) warehouse("C" + std::to_string(j), 1, 0, 0, 0);
  for (int i = 1; i <= n; ++i) {
    warehouse("T" + std::to_string(i), 0, 0, 0, 0);
    warehouse("F" + std::to_string(i), 0, 0, 0, 0);
  }

  s.finalize();
  return s;
}

std::pair<Scenario, BlueMixedStrategy> generate_set_cover_gadget(const SetCoverInstance& inst) {
  if (inst.sets.empty()) throw std::invalid_argument("set cover instance has no sets");
  const int n = inst.universe_size;
  const int m = static_cast<int>(inst.sets.size());
  std::vector<std::vector<int>> covering(n);
  for (int j = 0; j < m; ++j)
    for (int u : inst.sets[j]) {
      if (u < 0 || u >= n) throw std::invalid_argument("set element outside the universe");
      covering[u].push_back(j);
    }
  for (int u = 0; u < n; ++u)
    if (covering[u].empty())
      throw std::invalid_argument("universe element " + std::to_string(u) +
                                  " is not covered by any set");

  Scenario s;
  s.horizon = 2 * n + 1;
  s.interdiction.budget = inst.budget;

  s.graph.add_node("s");
  for (int j = 1; j <= m; ++j) s.graph.add_node("S" + std::to_string(j));
  for (int j = 1; j <= m; ++j) s.graph.add_node("S" + std::to_string(j) + "p");
  s.graph.add_node("t");

  std::vector<int> enter(m), forward(m), to_t(m);
  std::vector<std::vector<int>> back(m, std::vector<int>(m));
  for (int j = 0; j < m; ++j) {
    const std::string sj = "S" + std::to_string(j + 1);
    enter[j] = s.graph.add_edge("s", sj, "s__" + sj);
    // Only the forward edges are interdictable.
    forward[j] = s.graph.add_edge(sj, sj + "p", sj + "__" + sj + "p", 1.0);
  }
  for (int j = 0; j < m; ++j) {
    const std::string sjp = "S" + std::to_string(j + 1) + "p";
    for (int i = 0; i < m; ++i) {
      const std::string si = "S" + std::to_string(i + 1);
      back[j][i] = s.graph.add_edge(sjp, si, sjp + "__" + si);
    }
    to_t[j] = s.graph.add_edge(sjp, "t", sjp + "__t");
  }
  const int loop_t = s.graph.add_edge("t", "t", "loop_t");

  s.packages.push_back(Package{"p", 1.0, 1.0});
  Connector c;
  c.id = "c";
  c.initial_location = s.graph.node("s");
  c.weight_cap = c.volume_cap = 1;
  allow_all_edges(s, c);
  s.connectors.push_back(std::move(c));

  Warehouse source;
  source.node = s.graph.node("s");
  source.supply = {1.0};
  source.demand = {0.0};
  s.warehouses.push_back(source);
  Warehouse sink;
  sink.node = s.graph.node("t");
  sink.supply = {0.0};
  sink.demand = {1.0};
  sink.unit_payoff = 1.0;
  sink.max_units = 1.0;
  s.warehouses.push_back(sink);

  s.finalize();

  // The reduction's mixture: for every universe element, a path through all
  // sets containing it, padded with terminal loops; uniform probabilities.
  BlueMixedStrategy mixture;
  for (int u = 0; u < n; ++u) {
    std::vector<int> route;
    const auto& ts = covering[u];
    route.push_back(enter[ts[0]]);
    route.push_back(forward[ts[0]]);
    for (size_t a = 1; a < ts.size(); ++a) {
      route.push_back(back[ts[a - 1]][ts[a]]);
      route.push_back(forward[ts[a]]);
    }
    route.push_back(to_t[ts.back()]);
    while (static_cast<int>(route.size()) < s.horizon) route.push_back(loop_t);
    LogisticsPlan plan;
    plan.routes.push_back(std::move(route));
    mixture.add(std::move(plan), 1.0 / n);
  }
  return {std::move(s), std::move(mixture)};
}

}  // namespace clg
