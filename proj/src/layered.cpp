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

#include "clg/layered.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace clg {

LayeredGraph::LayeredGraph(const Scenario& s, int connector)
    : connector_(connector), horizon_(s.horizon) {
  const Connector& c = s.connectors[connector];
  const int n_phys = s.graph.num_nodes();
  const int T = s.horizon;

  std::vector<std::vector<bool>> reach(T + 1, std::vector<bool>(n_phys, false));
  reach[0][c.initial_location] = true;
  for (int t = 0; t < T; ++t)
    for (const auto& [e, steps] : c.traversal_time) {
      const Edge& edge = s.graph.edges[e];
      if (t + steps <= T && reach[t][edge.tail]) reach[t + steps][edge.head] = true;
    }

  node_lookup_.assign(T + 1, std::vector<int>(n_phys, -1));
  for (int t = 0; t <= T; ++t)
    for (int v = 0; v < n_phys; ++v)
      if (reach[t][v]) {
        node_lookup_[t][v] = num_nodes();
        nodes_.push_back(LayeredNode{v, t});
      }
  origin_ = node_lookup_[0][c.initial_location];

  out_.assign(nodes_.size(), {});
  in_.assign(nodes_.size(), {});
  for (int i = 0; i < num_nodes(); ++i) {
    const LayeredNode& ln = nodes_[i];
    for (const auto& [e, steps] : c.traversal_time) {
      const Edge& edge = s.graph.edges[e];
      if (edge.tail != ln.phys_node || ln.t + steps > T) continue;
      const int head = node_lookup_[ln.t + steps][edge.head];
      const int eix = num_edges();
      edges_.push_back(LayeredEdge{i, head, e});
      out_[i].push_back(eix);
      in_[head].push_back(eix);
    }
  }
}

int LayeredGraph::node_at(int phys, int t) const {
  if (t < 0 || t >= static_cast<int>(node_lookup_.size())) return -1;
  return node_lookup_[t][phys];
}

void LayeredGraph::build_reachability() const {
  const int words = (num_nodes() + 63) / 64;
  reach_.assign(num_nodes(), std::vector<std::uint64_t>(words, 0));
  // Nodes are stored in topological order, so a single reverse sweep closes
  // the relation.
  for (int v = num_nodes() - 1; v >= 0; --v) {
    reach_[v][v / 64] |= 1ULL << (v % 64);
    for (int e : out_[v]) {
      const auto& succ = reach_[edges_[e].head];
      for (int w = 0; w < words; ++w) reach_[v][w] |= succ[w];
    }
  }
}

bool LayeredGraph::reachable_between(int e1, int e2) const {
  if (e1 == e2) return false;
  if (reach_.empty()) build_reachability();
  const int from = edges_[e1].head;
  const int to = edges_[e2].tail;
  return (reach_[from][to / 64] >> (to % 64)) & 1;
}

double LayeredGraph::count_paths() const {
  std::vector<double> paths(num_nodes(), 0.0);
  for (int v = num_nodes() - 1; v >= 0; --v) {
    if (nodes_[v].t == horizon_) {
      paths[v] = 1.0;
      continue;
    }
    for (int e : out_[v]) paths[v] += paths[edges_[e].head];
  }
  return origin_ >= 0 ? paths[origin_] : 0.0;
}

std::vector<std::vector<int>> LayeredGraph::enumerate_paths(std::int64_t cap) const {
  if (count_paths() > static_cast<double>(cap))
    throw std::runtime_error("path enumeration cap exceeded: connector has " +
                             std::to_string(static_cast<std::int64_t>(count_paths())) +
                             " paths, cap " + std::to_string(cap));
  std::vector<std::vector<int>> result;
  std::vector<int> stack;
  std::function<void(int)> dfs = [&](int v) {
    if (nodes_[v].t == horizon_) {
      result.push_back(stack);
      return;
    }
    for (int e : out_[v]) {
      stack.push_back(e);
      dfs(edges_[e].head);
      stack.pop_back();
    }
  };
  if (origin_ >= 0) dfs(origin_);
  return result;
}

std::string LayeredGraph::to_dot(const Scenario& s) const {
  std::ostringstream os;
  os << "digraph layered_" << s.connectors[connector_].id << " {\n  rankdir=LR;\n";
  for (int i = 0; i < num_nodes(); ++i)
    os << "  n" << i << " [label=\"" << s.graph.node_ids[nodes_[i].phys_node] << ","
       << nodes_[i].t << "\"];\n";
  for (const auto& e : edges_)
    os << "  n" << e.tail << " -> n" << e.head << " [label=\"" << s.graph.edges[e.phys_edge].id
       << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string LogisticsPlan::key() const {
  std::ostringstream os;
  for (const auto& route : routes) {
    for (int e : route) os << e << ',';
    os << '|';
  }
  return os.str();
}

bool InterdictionPlan::contains(int phys_edge) const {
  return std::binary_search(edges.begin(), edges.end(), phys_edge);
}

std::string InterdictionPlan::key() const {
  std::ostringstream os;
  for (int e : edges) os << e << ',';
  return os.str();
}

TruncatedPlan truncate_plan(const LogisticsPlan& plan, const InterdictionPlan& interdiction) {
  TruncatedPlan out;
  out.routes.reserve(plan.routes.size());
  for (const auto& route : plan.routes) {
    TruncatedRoute tr;
    for (int e : route) {
      tr.edges.push_back(e);
      if (interdiction.contains(e)) {
        tr.destroyed = true;
        break;
      }
    }
    out.routes.push_back(std::move(tr));
  }
  return out;
}

LayeredContext::LayeredContext(const Scenario& scenario) : scenario_(&scenario) {
  graphs_.reserve(scenario.connectors.size());
  for (int c = 0; c < static_cast<int>(scenario.connectors.size()); ++c)
    graphs_.emplace_back(scenario, c);
}

std::vector<int> LayeredContext::route_to_layered(int connector, const std::vector<int>& route) const {
  const LayeredGraph& g = graphs_[connector];
  const Connector& c = scenario_->connectors[connector];
  std::vector<int> out;
  out.reserve(route.size());
  int at = g.origin();
  for (int phys : route) {
    int found = -1;
    for (int e : g.out_edges(at))
      if (g.edge(e).phys_edge == phys) {
        found = e;
        break;
      }
    if (found < 0)
      throw std::invalid_argument("route is not a feasible path for connector " + c.id);
    out.push_back(found);
    at = g.edge(found).head;
  }
  if (g.node(at).t != scenario_->horizon)
    throw std::invalid_argument("route for connector " + c.id + " does not reach the horizon");
  return out;
}

std::vector<LogisticsPlan> enumerate_logistics_plans(const LayeredContext& ctx, std::int64_t cap) {
  const int n = ctx.num_connectors();
  double product = 1.0;
  std::vector<double> counts(n);
  for (int c = 0; c < n; ++c) {
    counts[c] = ctx.graph(c).count_paths();
    product *= counts[c];
  }
  if (product > static_cast<double>(cap)) {
    std::ostringstream os;
    os << "logistics plan cap exceeded: per-connector path counts";
    for (double cnt : counts) os << ' ' << static_cast<std::int64_t>(cnt);
    os << ", product exceeds cap " << cap;
    throw std::runtime_error(os.str());
  }

  std::vector<std::vector<std::vector<int>>> paths(n);
  for (int c = 0; c < n; ++c) {
    paths[c] = ctx.graph(c).enumerate_paths(cap);
    // Translate layered edge indices to physical ones.
    for (auto& p : paths[c])
      for (int& e : p) e = ctx.graph(c).edge(e).phys_edge;
  }

  std::vector<LogisticsPlan> plans;
  LogisticsPlan current;
  current.routes.resize(n);
  std::function<void(int)> rec = [&](int c) {
    if (c == n) {
      plans.push_back(current);
      return;
    }
    for (const auto& p : paths[c]) {
      current.routes[c] = p;
      rec(c + 1);
    }
  };
  rec(0);
  return plans;
}

InterdictionPlan make_interdiction_plan(const Scenario& s, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  InterdictionPlan plan;
  plan.edges = std::move(edges);
  for (int e : plan.edges) {
    const auto& cost = s.graph.edges[e].interdiction_cost;
    if (!cost) throw std::invalid_argument("edge " + s.graph.edges[e].id + " is not interdictable");
    plan.total_cost += *cost;
  }
  if (plan.total_cost > s.interdiction.budget + 1e-9)
    throw std::invalid_argument("interdiction plan exceeds the budget");
  return plan;
}

std::vector<InterdictionPlan> enumerate_interdiction_plans(const Scenario& s, std::int64_t cap,
                                                           bool include_all) {
  const auto& cand = s.interdiction.interdictable_edges;
  std::vector<double> costs(cand.size());
  for (size_t i = 0; i < cand.size(); ++i) costs[i] = *s.graph.edges[cand[i]].interdiction_cost;

  std::vector<InterdictionPlan> out;
  std::vector<int> chosen;
  auto emit = [&](double cost, bool maximal) {
    if (!include_all && !maximal && !chosen.empty()) return;
    if (static_cast<std::int64_t>(out.size()) >= cap)
      throw std::runtime_error("interdiction plan cap exceeded (cap " + std::to_string(cap) + ")");
    InterdictionPlan plan;
    for (int i : chosen) plan.edges.push_back(cand[i]);
    plan.total_cost = cost;
    out.push_back(std::move(plan));
  };

  // Depth-first over candidate indices; a set is maximal iff no skipped or
  // remaining edge still fits the leftover budget.
  std::function<void(size_t, double)> rec = [&](size_t i, double cost) {
    if (i == cand.size()) {
      bool maximal = true;
      for (size_t k = 0; k < cand.size(); ++k)
        if (!std::binary_search(chosen.begin(), chosen.end(), static_cast<int>(k)) &&
            cost + costs[k] <= s.interdiction.budget + 1e-9) {
          maximal = false;
          break;
        }
      emit(cost, maximal);
      return;
    }
    if (cost + costs[i] <= s.interdiction.budget + 1e-9) {
      chosen.push_back(static_cast<int>(i));
      rec(i + 1, cost + costs[i]);
      chosen.pop_back();
    }
    rec(i + 1, cost);
  };
  rec(0, 0.0);

  // The DFS always visits the all-skipped leaf, so the empty set is present;
  // dedupe is unnecessary because subsets are visited once.
  return out;
}

}  // namespace clg
