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

#ifndef CLG_TESTS_FIXTURES_HPP_
#define CLG_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "clg/scenario.hpp"

namespace clg::testing {

// The three-node triangle with a two-step loop at A usable by c1 only;
// c1 starts at A, c2 at B, every other edge takes one step.
inline Scenario triangle_scenario(int horizon = 2) {
  Scenario s;
  s.horizon = horizon;
  for (const char* n : {"A", "B", "C"}) s.graph.add_node(n);
  const int ab = s.graph.add_edge("A", "B", "AB", 1.0);
  const int ba = s.graph.add_edge("B", "A", "BA", 1.0);
  const int bc = s.graph.add_edge("B", "C", "BC", 1.0);
  const int cb = s.graph.add_edge("C", "B", "CB", 1.0);
  const int ca = s.graph.add_edge("C", "A", "CA", 1.0);
  const int ac = s.graph.add_edge("A", "C", "AC", 1.0);
  const int loop_a = s.graph.add_edge("A", "A", "loopA");

  s.packages.push_back(Package{"p", 1.0, 1.0});

  Connector c1;
  c1.id = "c1";
  c1.initial_location = s.graph.node("A");
  c1.weight_cap = c1.volume_cap = 2.0;
  for (int e : {ab, ba, bc, cb, ca, ac}) c1.traversal_time[e] = 1;
  c1.traversal_time[loop_a] = 2;
  s.connectors.push_back(c1);

  Connector c2;
  c2.id = "c2";
  c2.initial_location = s.graph.node("B");
  c2.weight_cap = c2.volume_cap = 2.0;
  for (int e : {ab, ba, bc, cb, ca, ac}) c2.traversal_time[e] = 1;
  s.connectors.push_back(c2);

  Warehouse wa;
  wa.node = s.graph.node("A");
  wa.supply = {1.0};
  wa.demand = {0.0};
  s.warehouses.push_back(wa);
  Warehouse wb;
  wb.node = s.graph.node("B");
  wb.supply = {0.0};
  wb.demand = {1.0};
  wb.unit_payoff = 1.0;
  wb.max_units = 1.0;
  s.warehouses.push_back(wb);

  s.interdiction.budget = 1.0;
  s.finalize();
  return s;
}

// One supply node, two interdictable disjoint corridors to a demand node,
// plus a protected (non-interdictable) slower route worth less.
//   corridors: s -> a -> d and s -> b -> d, value 2 each (2 units delivered)
//   protected: s -> z -> d2, value 1.2 (payoff 0.6 per unit, 2 units)
inline Scenario two_corridor_scenario() {
  Scenario s;
  s.horizon = 3;
  for (const char* n : {"s", "a", "b", "z", "d", "d2"}) s.graph.add_node(n);
  s.graph.add_edge("s", "a", "sa", 1.0);
  s.graph.add_edge("a", "d", "ad", 1.0);
  s.graph.add_edge("s", "b", "sb", 1.0);
  s.graph.add_edge("b", "d", "bd", 1.0);
  s.graph.add_edge("s", "z", "sz");
  s.graph.add_edge("z", "d2", "zd2");
  for (const char* n : {"s", "a", "b", "z", "d", "d2"})
    s.graph.add_edge(n, n, std::string("loop_") + n);

  s.packages.push_back(Package{"p", 1.0, 1.0});
  Connector c;
  c.id = "c";
  c.initial_location = s.graph.node("s");
  c.weight_cap = c.volume_cap = 2.0;
  for (int e = 0; e < s.graph.num_edges(); ++e) c.traversal_time[e] = 1;
  s.connectors.push_back(c);

  Warehouse src;
  src.node = s.graph.node("s");
  src.supply = {2.0};
  src.demand = {0.0};
  s.warehouses.push_back(src);
  Warehouse d;
  d.node = s.graph.node("d");
  d.supply = {0.0};
  d.demand = {1.0};
  d.unit_payoff = 1.0;
  d.max_units = 2.0;
  s.warehouses.push_back(d);
  Warehouse d2;
  d2.node = s.graph.node("d2");
  d2.supply = {0.0};
  d2.demand = {1.0};
  d2.unit_payoff = 0.6;
  d2.max_units = 2.0;
  s.warehouses.push_back(d2);

  s.interdiction.budget = 1.0;
  s.finalize();
  return s;
}

// Single corridor s -> a -> d; budget 1 disconnects it.
inline Scenario single_corridor_scenario() {
  Scenario s;
  s.horizon = 2;
  for (const char* n : {"s", "a", "d"}) s.graph.add_node(n);
  s.graph.add_edge("s", "a", "sa", 1.0);
  s.graph.add_edge("a", "d", "ad", 1.0);
  for (const char* n : {"s", "a", "d"}) s.graph.add_edge(n, n, std::string("loop_") + n);
  s.packages.push_back(Package{"p", 1.0, 1.0});
  Connector c;
  c.id = "c";
  c.initial_location = s.graph.node("s");
  c.weight_cap = c.volume_cap = 1.0;
  for (int e = 0; e < s.graph.num_edges(); ++e) c.traversal_time[e] = 1;
  s.connectors.push_back(c);
  Warehouse src;
  src.node = s.graph.node("s");
  src.supply = {1.0};
  src.demand = {0.0};
  s.warehouses.push_back(src);
  Warehouse dst;
  dst.node = s.graph.node("d");
  dst.supply = {0.0};
  dst.demand = {1.0};
  dst.unit_payoff = 1.0;
  dst.max_units = 1.0;
  s.warehouses.push_back(dst);
  s.interdiction.budget = 1.0;
  s.finalize();
  return s;
}

}  // namespace clg::testing

#endif  // CLG_TESTS_FIXTURES_HPP_
