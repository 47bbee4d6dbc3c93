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

#ifndef CLG_GENERATORS_HPP_
#define CLG_GENERATORS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "clg/scenario.hpp"
#include "clg/strategy.hpp"

namespace clg {

struct GridOptions {
  int n = 5;  // grid side, >= 3
  int horizon = 10;
  double budget = 2.0;
  bool uniform_costs = true;  // otherwise integer costs uniform in [1, 5]
  double edge_drop_prob = 0.1;
  std::uint64_t seed = 0;
};

// N x N grid world: two trucks in opposite corners, five warehouses, two
// demand corners with payoffs drawn uniformly from [1, 2]. Wait self-loops on
// every node; loops are not interdictable. Deterministic under the seed.
Scenario generate_grid_world(const GridOptions& options);

// CNF clauses as signed 1-based variable indices (-2 means "not x2").
using CnfFormula = std::vector<std::vector<int>>;

// Hardness gadget: the equilibrium value is 1 iff the formula is satisfiable
// (and in general max-satisfiable-clauses / k). One assignment connector
// walks a variable chain, one connector per clause hands its package over at
// the assignment nodes.
Scenario generate_sat_gadget(const CnfFormula& cnf);

struct SetCoverInstance {
  int universe_size = 0;                    // elements 0..n-1
  std::vector<std::vector<int>> sets;       // each a list of covered elements
  int budget = 0;                           // b
};

// Hardness gadget and the mixture from its reduction: Red's best response
// against the returned strategy has value 0 iff a cover of size <= b exists.
std::pair<Scenario, BlueMixedStrategy> generate_set_cover_gadget(const SetCoverInstance& inst);

}  // namespace clg

#endif  // CLG_GENERATORS_HPP_
