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

#ifndef CLG_SCENARIO_HPP_
#define CLG_SCENARIO_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace clg {

// Thrown by load_scenario on malformed input; the message carries the
// offending field or byte position.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  int tail = -1;
  int head = -1;
  std::string id;
  // An edge is interdictable iff it has a cost.
  std::optional<double> interdiction_cost;
};

struct PhysicalGraph {
  std::vector<std::string> node_ids;
  std::vector<Edge> edges;
  std::unordered_map<std::string, int> node_index;
  std::unordered_map<std::string, int> edge_index;

  int add_node(const std::string& id);
  int add_edge(const std::string& tail, const std::string& head, const std::string& id,
               std::optional<double> interdiction_cost = std::nullopt);
  int node(const std::string& id) const;
  int num_nodes() const { return static_cast<int>(node_ids.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

struct Package {
  std::string id;
  double unit_weight = 0.0;
  double unit_volume = 0.0;
};

struct Connector {
  std::string id;
  int initial_location = -1;  // node index, must hold a warehouse
  double weight_cap = 0.0;
  double volume_cap = 0.0;
  // Allowed edge -> traversal time in timesteps (>= 1).
  std::map<int, int> traversal_time;

  bool allows(int edge) const { return traversal_time.count(edge) > 0; }
};

struct Warehouse {
  int node = -1;
  std::vector<double> supply;  // per package index
  std::vector<double> demand;  // per package index
  double unit_payoff = 0.0;
  double max_units = 0.0;

  bool has_demand() const {
    for (double d : demand)
      if (d > 0) return true;
    return false;
  }
};

struct InterdictionSpec {
  double budget = 0.0;
  // Derived views over PhysicalGraph: edges carrying a cost.
  std::vector<int> interdictable_edges;
};

struct Scenario {
  PhysicalGraph graph;
  std::vector<Package> packages;
  std::vector<Connector> connectors;
  std::vector<Warehouse> warehouses;
  InterdictionSpec interdiction;
  int horizon = 0;

  std::unordered_map<std::string, int> package_index;
  std::unordered_map<std::string, int> connector_index;
  std::vector<int> warehouse_at_node;  // node -> warehouse index or -1

  // Rebuilds derived indexes (interdictable set, node->warehouse map). Must
  // be called after any by-hand mutation; load/generators do it themselves.
  void finalize();

  int warehouse_index(int node) const {
    return node >= 0 && node < static_cast<int>(warehouse_at_node.size())
               ? warehouse_at_node[node]
               : -1;
  }
  double total_supply_units() const;
  // Upper bound on any utility: sum of P(w) * U(w) over demand warehouses.
  double max_utility() const;
};

// Returns human-readable invariant violations; empty means valid. Includes
// path-termination feasibility: a connector must be able to reach layer T
// from its start, and every node it can reach before T needs a way onward.
std::vector<std::string> validate_scenario(const Scenario& scenario);

// Scenario file I/O (JSON, schema in docs/scenario_schema.json).
Scenario load_scenario(const std::string& text);
std::string save_scenario(const Scenario& scenario);
Scenario load_scenario_file(const std::string& path);
void save_scenario_file(const Scenario& scenario, const std::string& path);

// Structural equality, used by round-trip tests.
bool scenario_equal(const Scenario& a, const Scenario& b);

}  // namespace clg

#endif  // CLG_SCENARIO_HPP_
