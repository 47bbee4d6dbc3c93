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

#ifndef CLG_LAYERED_HPP_
#define CLG_LAYERED_HPP_

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "clg/scenario.hpp"

namespace clg {

struct LayeredNode {
  int phys_node = -1;
  int t = 0;
};

struct LayeredEdge {
  int tail = -1;  // layered node index
  int head = -1;
  int phys_edge = -1;
};

// Per-connector time-expanded DAG. Only nodes reachable from (origin, 0) are
// materialized; node and edge order is (t, physical index) and therefore
// topological, since every edge advances time by at least one step.
class LayeredGraph {
 public:
  LayeredGraph(const Scenario& scenario, int connector);

  int connector() const { return connector_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const LayeredNode& node(int i) const { return nodes_[i]; }
  const LayeredEdge& edge(int i) const { return edges_[i]; }
  const std::vector<int>& out_edges(int node) const { return out_[node]; }
  const std::vector<int>& in_edges(int node) const { return in_[node]; }
  // Layered node index of (phys, t), or -1 when unreachable.
  int node_at(int phys, int t) const;
  int origin() const { return origin_; }

  // True iff e2 is reachable from e1: head(e1) lies on a directed walk to
  // tail(e2), including the zero-length walk. Never true for e1 == e2.
  bool reachable_between(int e1, int e2) const;

  // Number of origin-to-layer-T paths (DP over the DAG); used as an
  // independent check against explicit enumeration.
  double count_paths() const;

  // All root-to-layer-T paths as edge index sequences; throws if more than cap.
  std::vector<std::vector<int>> enumerate_paths(std::int64_t cap) const;

  std::string to_dot(const Scenario& scenario) const;

 private:
  void build_reachability() const;

  int connector_ = -1;
  int horizon_ = 0;
  int origin_ = -1;
  std::vector<LayeredNode> nodes_;
  std::vector<LayeredEdge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<std::vector<int>> node_lookup_;  // [t][phys] -> node index or -1
  // Lazily built bitset closure: reach_[v] has bit w set iff w is reachable
  // from v (including v itself).
  mutable std::vector<std::vector<std::uint64_t>> reach_;
};

// One path per connector, stored as physical edge id sequences (the layered
// path is recovered from the origin and traversal times). Blue pure strategy.
struct LogisticsPlan {
  std::vector<std::vector<int>> routes;  // [connector][step] -> physical edge index

  bool operator==(const LogisticsPlan& other) const { return routes == other.routes; }
  std::string key() const;
};

// Red pure strategy: a budget-feasible set of physical edges.
struct InterdictionPlan {
  std::vector<int> edges;  // sorted physical edge indices
  double total_cost = 0.0;

  bool operator==(const InterdictionPlan& other) const { return edges == other.edges; }
  bool contains(int phys_edge) const;
  std::string key() const;
};

struct TruncatedRoute {
  std::vector<int> edges;  // prefix of the route, physical edge indices
  bool destroyed = false;  // true iff the last edge is the interdicted one
};

struct TruncatedPlan {
  std::vector<TruncatedRoute> routes;
};

// Cuts each route at its first interdicted edge (kept, flagged destroyed).
TruncatedPlan truncate_plan(const LogisticsPlan& plan, const InterdictionPlan& interdiction);

// Shared per-scenario cache of unrolled graphs.
class LayeredContext {
 public:
  explicit LayeredContext(const Scenario& scenario);
  const LayeredGraph& graph(int connector) const { return graphs_[connector]; }
  const Scenario& scenario() const { return *scenario_; }
  int num_connectors() const { return static_cast<int>(graphs_.size()); }

  // Maps a physical-edge route back onto layered edge indices; throws if the
  // route is not a feasible origin-to-horizon path for that connector.
  std::vector<int> route_to_layered(int connector, const std::vector<int>& route) const;

 private:
  const Scenario* scenario_;
  std::vector<LayeredGraph> graphs_;
};

// Cartesian product of per-connector path enumerations.
std::vector<LogisticsPlan> enumerate_logistics_plans(const LayeredContext& ctx, std::int64_t cap);

// All maximal-by-inclusion budget-feasible interdiction sets plus the empty
// set; with include_all, every feasible subset instead.
std::vector<InterdictionPlan> enumerate_interdiction_plans(const Scenario& scenario,
                                                           std::int64_t cap,
                                                           bool include_all = false);

InterdictionPlan make_interdiction_plan(const Scenario& scenario, std::vector<int> edges);

}  // namespace clg

#endif  // CLG_LAYERED_HPP_
