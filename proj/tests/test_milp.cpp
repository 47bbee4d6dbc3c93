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

#include <cmath>

#include "clg/milp.hpp"
#include "clg/rng.hpp"
#include "doctest.h"

using namespace clg;
using namespace clg::milp;

namespace {

SolveOptions no_presolve() {
  SolveOptions o;
  o.use_presolve = false;
  return o;
}

// Random boxes and integer coefficients; statuses stay in {optimal,
// infeasible} because every variable is bounded.
Model random_lp(Rng& rng, bool with_binaries) {
  Model m;
  const int n = rng.uniform_int(1, 8);
  const int rows = rng.uniform_int(0, 8);
  for (int j = 0; j < n; ++j) {
    const bool binary = with_binaries && rng.bernoulli(0.7);
    if (binary) {
      m.add_binary();
    } else {
      const double lb = rng.uniform_int(-3, 1);
      m.add_continuous(lb, lb + rng.uniform_int(0, 5));
    }
  }
  for (int r = 0; r < rows; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j)
      if (rng.bernoulli(0.6)) terms.emplace_back(j, rng.uniform_int(-4, 4));
    if (terms.empty()) terms.emplace_back(rng.uniform_int(0, n - 1), 1.0);
    const auto sense = static_cast<RowSense>(rng.uniform_int(0, 2));
    m.add_row(terms, sense, rng.uniform_int(-6, 8));
  }
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < n; ++j) obj.emplace_back(j, rng.uniform_int(-5, 5));
  m.set_objective(rng.bernoulli(0.5) ? ObjSense::Maximize : ObjSense::Minimize, obj,
                  rng.uniform_int(-2, 2));
  return m;
}

// Exhaustive MILP oracle: enumerate binary assignments, solve the continuous
// remainder with the reference simplex.
SolveOutcome enumerate_milp(const Model& model) {
  std::vector<int> binaries;
  for (int j = 0; j < model.num_vars(); ++j)
    if (model.var(j).kind == VarKind::Binary) binaries.push_back(j);
  SolveOutcome best;
  best.status = SolveStatus::Infeasible;
  const bool maximize = model.obj_sense() == ObjSense::Maximize;
  for (int mask = 0; mask < (1 << binaries.size()); ++mask) {
    // Rebuild with every variable continuous and the binaries pinned.
    Model fixed;
    for (int j = 0; j < model.num_vars(); ++j)
      fixed.add_continuous(model.var(j).lb, model.var(j).ub);
    for (size_t k = 0; k < binaries.size(); ++k) {
      const double v = (mask >> k) & 1;
      fixed.set_bounds(binaries[k], v, v);
    }
    for (int r = 0; r < model.num_rows(); ++r)
      fixed.add_row(model.row(r).terms, model.row(r).sense, model.row(r).rhs);
    fixed.set_objective(model.obj_sense(), {}, model.obj_constant());
    for (int j = 0; j < model.num_vars(); ++j) fixed.set_obj_coef(j, model.obj()[j]);
    SolveOutcome sub = solve_with_reference(fixed, {});
    if (sub.status != SolveStatus::Optimal) continue;
    if (best.status != SolveStatus::Optimal ||
        (maximize ? sub.objective > best.objective : sub.objective < best.objective))
      best = sub;
  }
  return best;
}

}  // namespace

TEST_CASE("lp: simple bounded maximization") {
  Model m;
  int x = m.add_continuous(0, 3, "x");
  m.set_objective(ObjSense::Maximize, {{x, 1.0}});
  auto out = solve(m);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == doctest::Approx(3.0));
  CHECK(out.primal[x] == doctest::Approx(3.0));
}

TEST_CASE("mip: tiny binary knapsack") {
  Model m;
  int a = m.add_binary("a");
  int b = m.add_binary("b");
  m.add_row({{a, 1.0}, {b, 1.0}}, RowSense::LessEqual, 1.0);
  m.set_objective(ObjSense::Maximize, {{a, 2.0}, {b, 3.0}});
  auto out = solve(m);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective == doctest::Approx(3.0));
  CHECK(out.primal[b] == doctest::Approx(1.0));
  CHECK(out.primal[a] == doctest::Approx(0.0));
  CHECK(out.objective <= out.best_bound + 1e-9);
}

TEST_CASE("lp: infeasible bounds via rows") {
  Model m;
  int x = m.add_continuous(-10, 10, "x");
  m.add_row({{x, 1.0}}, RowSense::LessEqual, 0.0);
  m.add_row({{x, 1.0}}, RowSense::GreaterEqual, 1.0);
  m.set_objective(ObjSense::Minimize, {{x, 1.0}});
  CHECK(solve(m).status == SolveStatus::Infeasible);
  CHECK(solve(m, no_presolve()).status == SolveStatus::Infeasible);
}

TEST_CASE("lp: unbounded") {
  Model m;
  int x = m.add_continuous(0, kInf, "x");
  m.set_objective(ObjSense::Maximize, {{x, 1.0}});
  CHECK(solve(m, no_presolve()).status == SolveStatus::Unbounded);
}

TEST_CASE("lp: free variables and equalities") {
  Model m;
  int x = m.add_continuous(-kInf, kInf, "x");
  int y = m.add_continuous(0, 10, "y");
  m.add_row({{x, 1.0}, {y, 1.0}}, RowSense::Equal, 4.0);
  m.add_row({{x, 1.0}}, RowSense::GreaterEqual, -1.0);
  m.set_objective(ObjSense::Minimize, {{x, 1.0}, {y, 2.0}});
  auto out = solve(m, no_presolve());
  REQUIRE(out.status == SolveStatus::Optimal);
  // Push x up to 4 and y to 0? cost(x)=1 < cost(y)=2, so x=4, y=0.
  CHECK(out.objective == doctest::Approx(4.0));
}

TEST_CASE("lp: duals on a small production problem") {
  // min 3a + 2b s.t. a + b >= 4, a - b = 1, 0 <= a,b <= 10.
  Model m;
  int a = m.add_continuous(0, 10, "a");
  int b = m.add_continuous(0, 10, "b");
  int r1 = m.add_row({{a, 1.0}, {b, 1.0}}, RowSense::GreaterEqual, 4.0);
  int r2 = m.add_row({{a, 1.0}, {b, -1.0}}, RowSense::Equal, 1.0);
  m.set_objective(ObjSense::Minimize, {{a, 3.0}, {b, 2.0}});
  SolveOptions opts;
  opts.want_duals = true;
  auto out = solve(m, opts);
  REQUIRE(out.status == SolveStatus::Optimal);
  // a = 2.5, b = 1.5, obj = 10.5.
  CHECK(out.objective == doctest::Approx(10.5));
  REQUIRE(out.duals.size() == 2);
  // y = d obj / d rhs: raising the >= rhs by 1 moves both vars up by 0.5
  // (cost 2.5); raising the equality rhs swaps 0.5 from b to a (cost 0.5).
  CHECK(out.duals[r1] == doctest::Approx(2.5));
  CHECK(out.duals[r2] == doctest::Approx(0.5));
}

TEST_CASE("lp: production matches reference on random instances") {
  Rng rng(20260808);
  int optimal_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Model m = random_lp(rng, false);
    auto ref = solve_with_reference(m, {});
    auto got = solve(m);
    auto got_raw = solve(m, no_presolve());
    INFO("trial ", trial);
    REQUIRE(ref.status != SolveStatus::Error);
    REQUIRE(got.status != SolveStatus::Error);
    CHECK(got.status == ref.status);
    CHECK(got_raw.status == ref.status);
    if (ref.status == SolveStatus::Optimal) {
      ++optimal_seen;
      const double tol = 1e-6 * (1.0 + std::abs(ref.objective));
      CHECK(std::abs(got.objective - ref.objective) < tol);
      CHECK(std::abs(got_raw.objective - ref.objective) < tol);
    } else {
      ++infeasible_seen;
    }
  }
  // Make sure the generator exercises both outcomes.
  CHECK(optimal_seen > 50);
  CHECK(infeasible_seen > 20);
}

TEST_CASE("lp: dual vectors satisfy stationarity and complementarity") {
  Rng rng(977);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Model m = random_lp(rng, false);
    SolveOptions opts;
    opts.want_duals = true;
    auto out = solve(m, opts);
    if (out.status != SolveStatus::Optimal) continue;
    ++checked;
    const double dir = m.obj_sense() == ObjSense::Maximize ? -1.0 : 1.0;
    // Row complementarity: nonzero dual requires a binding row.
    for (int r = 0; r < m.num_rows(); ++r) {
      double act = 0.0;
      for (const auto& [v, c] : m.row(r).terms) act += c * out.primal[v];
      const double scale = 1.0 + std::abs(m.row(r).rhs);
      if (std::abs(out.duals[r]) > 1e-7)
        CHECK(std::abs(act - m.row(r).rhs) < 1e-6 * scale);
      if (m.row(r).sense == RowSense::LessEqual) CHECK(dir * out.duals[r] < 1e-7);
      if (m.row(r).sense == RowSense::GreaterEqual) CHECK(dir * out.duals[r] > -1e-7);
    }
    // Variable stationarity: reduced costs push optimal values to bounds.
    for (int j = 0; j < m.num_vars(); ++j) {
      double red = m.obj()[j];
      for (int r = 0; r < m.num_rows(); ++r)
        for (const auto& [v, c] : m.row(r).terms)
          if (v == j) red -= c * out.duals[r];
      const auto& var = m.var(j);
      const bool at_lb = out.primal[j] < var.lb + 1e-7;
      const bool at_ub = out.primal[j] > var.ub - 1e-7;
      if (!at_lb && !at_ub) CHECK(std::abs(red) < 1e-6);
      if (at_lb && !at_ub) CHECK(dir * red > -1e-6);
      if (at_ub && !at_lb) CHECK(dir * red < 1e-6);
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("mip: branch and bound matches exhaustive enumeration") {
  Rng rng(424242);
  int optimal_seen = 0;
  for (int trial = 0; trial < 250; ++trial) {
    Model m = random_lp(rng, true);
    if (!m.has_binaries()) continue;
    auto oracle = enumerate_milp(m);
    auto got = solve(m);
    auto got_raw = solve(m, no_presolve());
    INFO("trial ", trial);
    CHECK(got.status == oracle.status);
    CHECK(got_raw.status == oracle.status);
    if (oracle.status == SolveStatus::Optimal) {
      ++optimal_seen;
      const double tol = 1e-6 * (1.0 + std::abs(oracle.objective));
      CHECK(std::abs(got.objective - oracle.objective) < tol);
      CHECK(std::abs(got_raw.objective - oracle.objective) < tol);
      // Reported solutions must satisfy the model.
      for (int r = 0; r < m.num_rows(); ++r) {
        double act = 0.0;
        for (const auto& [v, c] : m.row(r).terms) act += c * got.primal[v];
        const double scale = 1.0 + std::abs(m.row(r).rhs);
        if (m.row(r).sense == RowSense::LessEqual) CHECK(act < m.row(r).rhs + 1e-5 * scale);
        if (m.row(r).sense == RowSense::GreaterEqual) CHECK(act > m.row(r).rhs - 1e-5 * scale);
        if (m.row(r).sense == RowSense::Equal)
          CHECK(std::abs(act - m.row(r).rhs) < 1e-5 * scale);
      }
    }
  }
  CHECK(optimal_seen > 60);
}

TEST_CASE("mip: warm start is honored as an incumbent") {
  // Maximize a knapsack; warm start with a feasible greedy point.
  Model m;
  std::vector<double> weights = {3, 4, 5, 7, 9, 2, 6};
  std::vector<double> values = {4, 5, 7, 9, 12, 2, 8};
  std::vector<std::pair<int, double>> cap, obj;
  for (size_t i = 0; i < weights.size(); ++i) {
    int v = m.add_binary();
    cap.emplace_back(v, weights[i]);
    obj.emplace_back(v, values[i]);
  }
  m.add_row(cap, RowSense::LessEqual, 15.0);
  m.set_objective(ObjSense::Maximize, obj);

  SolveOptions opts;
  opts.warm_start = {1, 1, 0, 0, 0, 1, 1};  // weight 15, value 19
  auto out = solve(m, opts);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.objective >= 19.0 - 1e-9);

  // With a zero-ish time budget the warm start must survive as best-known.
  opts.time_limit = 1e-9;
  auto limited = solve(m, opts);
  REQUIRE(limited.has_solution());
  CHECK(limited.objective >= 19.0 - 1e-9);
  CHECK(limited.objective <= limited.best_bound + 1e-9);
}

TEST_CASE("mip: incumbent and bound are monotone in the time limit") {
  Rng rng(555);
  Model m;
  std::vector<std::pair<int, double>> obj;
  const int n = 26;
  for (int i = 0; i < n; ++i) obj.emplace_back(m.add_binary(), rng.uniform_int(3, 40));
  for (int r = 0; r < 14; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) terms.emplace_back(i, rng.uniform_int(1, 9));
    m.add_row(terms, RowSense::LessEqual, rng.uniform_int(12, 30));
  }
  m.set_objective(ObjSense::Maximize, obj);

  double prev_obj = -kInf, prev_bound = kInf;
  for (double limit : {1e-4, 1e-3, 1e-2, 0.1, 10.0}) {
    SolveOptions opts;
    opts.time_limit = limit;
    opts.warm_start.assign(n, 0.0);  // all-zero is feasible
    auto out = solve(m, opts);
    REQUIRE(out.has_solution());
    CHECK(out.objective >= prev_obj - 1e-9);
    CHECK(out.best_bound <= prev_bound + 1e-9);
    CHECK(out.objective <= out.best_bound + 1e-9);
    prev_obj = out.objective;
    prev_bound = out.best_bound;
  }
}

TEST_CASE("backend registry") {
  CHECK(current_backend() == "simplex");
  CHECK_FALSE(set_backend("no-such-solver"));
  REQUIRE(set_backend("reference"));
  Model m;
  int x = m.add_continuous(0, 2, "x");
  m.set_objective(ObjSense::Maximize, {{x, 5.0}});
  auto out = solve(m);
  CHECK(out.status == SolveStatus::Optimal);
  CHECK(out.objective == doctest::Approx(10.0));
  REQUIRE(set_backend("simplex"));
}

TEST_CASE("model: lp format dump") {
  Model m;
  int x = m.add_continuous(0, 2, "x");
  int b = m.add_binary("pick");
  m.add_row({{x, 1.0}, {b, -3.0}}, RowSense::LessEqual, 1.0, "link");
  m.set_objective(ObjSense::Maximize, {{x, 1.0}, {b, 2.0}});
  const std::string lp = m.to_lp_format();
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("link:") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.find("pick") != std::string::npos);
}

TEST_CASE("model: well-formedness checks") {
  Model m;
  m.add_continuous(0, 1, "x");
  CHECK_THROWS(m.add_row({{7, 1.0}}, RowSense::LessEqual, 1.0));
  CHECK_THROWS(m.add_continuous(3, 2, "bad"));
  CHECK(m.check().empty());
}
