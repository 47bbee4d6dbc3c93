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

#include "clg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"

namespace clg {

using nlohmann::json;

int PhysicalGraph::add_node(const std::string& id) {
  auto it = node_index.find(id);
  if (it != node_index.end()) return it->second;
  node_index[id] = num_nodes();
  node_ids.push_back(id);
  return num_nodes() - 1;
}

int PhysicalGraph::add_edge(const std::string& tail, const std::string& head,
                            const std::string& id, std::optional<double> interdiction_cost) {
  if (edge_index.count(id)) throw std::invalid_argument("duplicate edge id: " + id);
  auto t = node_index.find(tail);
  auto h = node_index.find(head);
  if (t == node_index.end() || h == node_index.end())
    throw std::invalid_argument("edge " + id + " references unknown node");
  edge_index[id] = num_edges();
  edges.push_back(Edge{t->second, h->second, id, interdiction_cost});
  return num_edges() - 1;
}

int PhysicalGraph::node(const std::string& id) const {
  auto it = node_index.find(id);
  if (it == node_index.end()) throw std::invalid_argument("unknown node: " + id);
  return it->second;
}

void Scenario::finalize() {
  package_index.clear();
  for (int p = 0; p < static_cast<int>(packages.size()); ++p) package_index[packages[p].id] = p;
  connector_index.clear();
  for (int c = 0; c < static_cast<int>(connectors.size()); ++c)
    connector_index[connectors[c].id] = c;
  warehouse_at_node.assign(graph.num_nodes(), -1);
  for (int w = 0; w < static_cast<int>(warehouses.size()); ++w) {
    auto& wh = warehouses[w];
    wh.supply.resize(packages.size(), 0.0);
    wh.demand.resize(packages.size(), 0.0);
    if (wh.node >= 0 && wh.node < graph.num_nodes()) warehouse_at_node[wh.node] = w;
  }
  interdiction.interdictable_edges.clear();
  for (int e = 0; e < graph.num_edges(); ++e)
    if (graph.edges[e].interdiction_cost) interdiction.interdictable_edges.push_back(e);
}

double Scenario::total_supply_units() const {
  double total = 0.0;
  for (const auto& w : warehouses)
    for (double s : w.supply) total += s;
  return total;
}

double Scenario::max_utility() const {
  double total = 0.0;
  for (const auto& w : warehouses)
    if (w.has_demand()) total += w.unit_payoff * w.max_units;
  return total;
}

namespace {

// Forward BFS over (node, t) pairs for one connector; returns reach[t][v].
std::vector<std::vector<bool>> reachable_layers(const Scenario& s, const Connector& c) {
  const int T = s.horizon;
  std::vector<std::vector<bool>> reach(T + 1, std::vector<bool>(s.graph.num_nodes(), false));
  if (c.initial_location < 0) return reach;
  reach[0][c.initial_location] = true;
  for (int t = 0; t < T; ++t)
    for (const auto& [e, steps] : c.traversal_time) {
      const Edge& edge = s.graph.edges[e];
      if (t + steps <= T && reach[t][edge.tail]) reach[t + steps][edge.head] = true;
    }
  return reach;
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out;
  auto fail = [&out](const std::string& msg) { out.push_back(msg); };

  if (s.horizon < 1) fail("horizon must be >= 1");

  std::set<std::string> edge_ids;
  for (const auto& e : s.graph.edges) {
    if (e.tail < 0 || e.tail >= s.graph.num_nodes() || e.head < 0 ||
        e.head >= s.graph.num_nodes())
      fail("edge " + e.id + " has endpoints outside the node set");
    if (!edge_ids.insert(e.id).second) fail("duplicate edge id " + e.id);
    if (e.interdiction_cost && *e.interdiction_cost <= 0)
      fail("edge " + e.id + " has non-positive interdiction cost");
  }

  for (const auto& p : s.packages) {
    if (p.unit_weight < 0 || p.unit_volume < 0)
      fail("package " + p.id + " has negative weight or volume");
    if (p.unit_weight == 0 && p.unit_volume == 0)
      fail("package " + p.id + " has zero weight and zero volume");
  }

  std::set<int> warehouse_nodes;
  for (const auto& w : s.warehouses) {
    if (w.node < 0 || w.node >= s.graph.num_nodes()) {
      fail("warehouse on unknown node");
      continue;
    }
    if (!warehouse_nodes.insert(w.node).second)
      fail("more than one warehouse at node " + s.graph.node_ids[w.node]);
    for (double v : w.supply)
      if (v < 0) fail("negative supply at " + s.graph.node_ids[w.node]);
    for (double v : w.demand)
      if (v < 0) fail("negative demand at " + s.graph.node_ids[w.node]);
    if (w.unit_payoff < 0) fail("negative unit payoff at " + s.graph.node_ids[w.node]);
    if (w.max_units < 0) fail("negative max units at " + s.graph.node_ids[w.node]);
  }

  if (s.interdiction.budget < 0) fail("negative interdiction budget");

  for (const auto& c : s.connectors) {
    if (c.initial_location < 0 || c.initial_location >= s.graph.num_nodes()) {
      fail("connector " + c.id + " has no initial location");
      continue;
    }
    if (!warehouse_nodes.count(c.initial_location))
      fail("connector " + c.id + " does not start at a warehouse node");
    if (c.weight_cap <= 0 || c.volume_cap <= 0)
      fail("connector " + c.id + " must have positive weight and volume capacity");
    bool edges_ok = true;
    for (const auto& [e, steps] : c.traversal_time) {
      if (e < 0 || e >= s.graph.num_edges()) {
        fail("connector " + c.id + " allows an unknown edge");
        edges_ok = false;
      }
      if (steps < 1) fail("connector " + c.id + " has traversal time < 1");
    }
    if (!edges_ok || s.horizon < 1) continue;

    // Path-termination feasibility: Blue paths must conserve flow at every
    // layer, so every reachable (v, t) with t < T needs a way onward.
    auto reach = reachable_layers(s, c);
    bool origin_moves = false;
    for (const auto& [e, steps] : c.traversal_time)
      if (s.graph.edges[e].tail == c.initial_location && steps <= s.horizon) origin_moves = true;
    if (!origin_moves)
      fail("connector " + c.id + " has no allowed outgoing edge from its start at t=0");
    for (int t = 0; t < s.horizon; ++t)
      for (int v = 0; v < s.graph.num_nodes(); ++v) {
        if (!reach[t][v]) continue;
        bool onward = false;
        for (const auto& [e, steps] : c.traversal_time)
          if (s.graph.edges[e].tail == v && t + steps <= s.horizon) onward = true;
        if (!onward)
          fail("connector " + c.id + " dead-ends at node " + s.graph.node_ids[v] + " at t=" +
               std::to_string(t) + " (no allowed edge continues toward the horizon)");
      }
  }
  return out;
}

namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing field \"" + std::string(key) + "\" in " + where);
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("expected a number at " + where);
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError("expected a string at " + where);
  return j.get<std::string>();
}

}  // namespace

Scenario load_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario root must be an object");

  Scenario s;
  for (const auto& n : require(j, "nodes", "scenario"))
    s.graph.add_node(as_string(n, "nodes[]"));

  for (const auto& e : require(j, "edges", "scenario")) {
    std::optional<double> cost;
    if (e.contains("interdiction_cost"))
      cost = as_number(e["interdiction_cost"], "edges[].interdiction_cost");
    try {
      s.graph.add_edge(as_string(require(e, "tail", "edges[]"), "edges[].tail"),
                       as_string(require(e, "head", "edges[]"), "edges[].head"),
                       as_string(require(e, "id", "edges[]"), "edges[].id"), cost);
    } catch (const std::invalid_argument& err) {
      throw ParseError(err.what());
    }
  }

  for (const auto& p : require(j, "packages", "scenario")) {
    Package pkg;
    pkg.id = as_string(require(p, "id", "packages[]"), "packages[].id");
    pkg.unit_weight = as_number(require(p, "unit_weight", "packages[]"), "packages[].unit_weight");
    pkg.unit_volume = as_number(require(p, "unit_volume", "packages[]"), "packages[].unit_volume");
    if (s.package_index.count(pkg.id)) throw ParseError("duplicate package id " + pkg.id);
    s.package_index[pkg.id] = static_cast<int>(s.packages.size());
    s.packages.push_back(pkg);
  }

  for (const auto& c : require(j, "connectors", "scenario")) {
    Connector conn;
    conn.id = as_string(require(c, "id", "connectors[]"), "connectors[].id");
    const std::string loc =
        as_string(require(c, "initial_location", "connectors[]"), "connectors[].initial_location");
    auto it = s.graph.node_index.find(loc);
    if (it == s.graph.node_index.end())
      throw ParseError("connector " + conn.id + " starts at unknown node " + loc);
    conn.initial_location = it->second;
    conn.weight_cap = as_number(require(c, "weight_cap", "connectors[]"), "connectors[].weight_cap");
    conn.volume_cap = as_number(require(c, "volume_cap", "connectors[]"), "connectors[].volume_cap");
    const json& allowed = require(c, "allowed_edges", "connectors[]");
    if (!allowed.is_object()) throw ParseError("connectors[].allowed_edges must be an object");
    for (auto it2 = allowed.begin(); it2 != allowed.end(); ++it2) {
      auto eix = s.graph.edge_index.find(it2.key());
      if (eix == s.graph.edge_index.end())
        throw ParseError("connector " + conn.id + " allows unknown edge " + it2.key());
      if (!it2.value().is_number_integer() || it2.value().get<int>() < 1)
        throw ParseError("traversal_time for edge " + it2.key() + " must be a positive integer");
      conn.traversal_time[eix->second] = it2.value().get<int>();
    }
    s.connectors.push_back(std::move(conn));
  }

  for (const auto& w : require(j, "warehouses", "scenario")) {
    Warehouse wh;
    const std::string node =
        as_string(require(w, "node", "warehouses[]"), "warehouses[].node");
    auto it = s.graph.node_index.find(node);
    if (it == s.graph.node_index.end()) throw ParseError("warehouse at unknown node " + node);
    wh.node = it->second;
    wh.supply.assign(s.packages.size(), 0.0);
    wh.demand.assign(s.packages.size(), 0.0);
    auto read_amounts = [&](const char* key, std::vector<double>& into) {
      const json& m = require(w, key, "warehouses[]");
      if (!m.is_object()) throw ParseError(std::string("warehouses[].") + key + " must be an object");
      for (auto a = m.begin(); a != m.end(); ++a) {
        auto pix = s.package_index.find(a.key());
        if (pix == s.package_index.end())
          throw ParseError("warehouse at " + node + " references unknown package " + a.key());
        into[pix->second] = as_number(a.value(), std::string("warehouses[].") + key);
      }
    };
    read_amounts("supply", wh.supply);
    read_amounts("demand", wh.demand);
    wh.unit_payoff = as_number(require(w, "unit_payoff", "warehouses[]"), "warehouses[].unit_payoff");
    wh.max_units = as_number(require(w, "max_units", "warehouses[]"), "warehouses[].max_units");
    s.warehouses.push_back(std::move(wh));
  }

  const json& budget = require(j, "budget", "scenario");
  s.interdiction.budget = as_number(budget, "budget");
  const json& horizon = require(j, "horizon", "scenario");
  if (!horizon.is_number_integer()) throw ParseError("horizon must be an integer");
  s.horizon = horizon.get<int>();

  s.finalize();
  return s;
}

std::string save_scenario(const Scenario& s) {
  json j;
  j["nodes"] = s.graph.node_ids;
  json edges = json::array();
  for (const auto& e : s.graph.edges) {
    json je;
    je["tail"] = s.graph.node_ids[e.tail];
    je["head"] = s.graph.node_ids[e.head];
    je["id"] = e.id;
    if (e.interdiction_cost) je["interdiction_cost"] = *e.interdiction_cost;
    edges.push_back(je);
  }
  j["edges"] = edges;
  json packages = json::array();
  for (const auto& p : s.packages)
    packages.push_back({{"id", p.id}, {"unit_weight", p.unit_weight}, {"unit_volume", p.unit_volume}});
  j["packages"] = packages;
  json connectors = json::array();
  for (const auto& c : s.connectors) {
    json jc;
    jc["id"] = c.id;
    jc["initial_location"] = s.graph.node_ids[c.initial_location];
    jc["weight_cap"] = c.weight_cap;
    jc["volume_cap"] = c.volume_cap;
    json allowed = json::object();
    for (const auto& [e, steps] : c.traversal_time) allowed[s.graph.edges[e].id] = steps;
    jc["allowed_edges"] = allowed;
    connectors.push_back(jc);
  }
  j["connectors"] = connectors;
  json warehouses = json::array();
  for (const auto& w : s.warehouses) {
    json jw;
    jw["node"] = s.graph.node_ids[w.node];
    json supply = json::object(), demand = json::object();
    for (size_t p = 0; p < s.packages.size(); ++p) {
      if (w.supply[p] != 0) supply[s.packages[p].id] = w.supply[p];
      if (w.demand[p] != 0) demand[s.packages[p].id] = w.demand[p];
    }
    jw["supply"] = supply;
    jw["demand"] = demand;
    jw["unit_payoff"] = w.unit_payoff;
    jw["max_units"] = w.max_units;
    warehouses.push_back(jw);
  }
  j["warehouses"] = warehouses;
  j["budget"] = s.interdiction.budget;
  j["horizon"] = s.horizon;
  return j.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << save_scenario(s);
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
  if (a.graph.node_ids != b.graph.node_ids) return false;
  if (a.graph.num_edges() != b.graph.num_edges()) return false;
  for (int e = 0; e < a.graph.num_edges(); ++e) {
    const Edge &x = a.graph.edges[e], &y = b.graph.edges[e];
    if (x.tail != y.tail || x.head != y.head || x.id != y.id ||
        x.interdiction_cost != y.interdiction_cost)
      return false;
  }
  if (a.packages.size() != b.packages.size()) return false;
  for (size_t p = 0; p < a.packages.size(); ++p) {
    if (a.packages[p].id != b.packages[p].id ||
        a.packages[p].unit_weight != b.packages[p].unit_weight ||
        a.packages[p].unit_volume != b.packages[p].unit_volume)
      return false;
  }
  if (a.connectors.size() != b.connectors.size()) return false;
  for (size_t c = 0; c < a.connectors.size(); ++c) {
    const Connector &x = a.connectors[c], &y = b.connectors[c];
    if (x.id != y.id || x.initial_location != y.initial_location || x.weight_cap != y.weight_cap ||
        x.volume_cap != y.volume_cap || x.traversal_time != y.traversal_time)
      return false;
  }
  if (a.warehouses.size() != b.warehouses.size()) return false;
  for (size_t w = 0; w < a.warehouses.size(); ++w) {
    const Warehouse &x = a.warehouses[w], &y = b.warehouses[w];
    if (x.node != y.node || x.supply != y.supply || x.demand != y.demand ||
        x.unit_payoff != y.unit_payoff || x.max_units != y.max_units)
      return false;
  }
  return a.interdiction.budget == b.interdiction.budget && a.horizon == b.horizon;
}

}  // namespace clg
