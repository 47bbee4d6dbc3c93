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

#ifndef CLG_STRATEGY_HPP_
#define CLG_STRATEGY_HPP_

#include <string>
#include <vector>

#include "clg/layered.hpp"

namespace clg {

// Mixed strategy over pure plans. Probabilities live on the simplex within
// 1e-9 and support entries are pairwise distinct.
template <typename Plan>
struct MixedStrategy {
  std::vector<Plan> support;
  std::vector<double> probs;

  int size() const { return static_cast<int>(support.size()); }

  // Adds a plan, merging probability into an existing identical entry.
  void add(Plan plan, double prob) {
    for (int i = 0; i < size(); ++i) {
      if (support[i] == plan) {
        probs[i] += prob;
        return;
      }
    }
    support.push_back(std::move(plan));
    probs.push_back(prob);
  }

  // Drops zero-probability entries and renormalizes.
  void prune(double tol = 1e-12) {
    std::vector<Plan> s;
    std::vector<double> p;
    double total = 0.0;
    for (int i = 0; i < size(); ++i) {
      if (probs[i] > tol) {
        s.push_back(support[i]);
        p.push_back(probs[i]);
        total += probs[i];
      }
    }
    if (total > 0)
      for (double& x : p) x /= total;
    support = std::move(s);
    probs = std::move(p);
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    if (support.size() != probs.size()) {
      out.push_back("support and probability sizes differ");
      return out;
    }
    double total = 0.0;
    for (double p : probs) {
      if (p < -1e-12) out.push_back("negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) out.push_back("probabilities do not sum to 1");
    for (size_t i = 0; i < support.size(); ++i)
      for (size_t j = i + 1; j < support.size(); ++j)
        if (support[i] == support[j]) out.push_back("duplicate support entries");
    return out;
  }
};

using BlueMixedStrategy = MixedStrategy<LogisticsPlan>;
using RedMixedStrategy = MixedStrategy<InterdictionPlan>;

}  // namespace clg

#endif  // CLG_STRATEGY_HPP_
