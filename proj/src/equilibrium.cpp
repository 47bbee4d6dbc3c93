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

#include "clg/equilibrium.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace clg {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> normalized_simplex(std::vector<double> x) {
  double total = 0.0;
  for (double& v : x) {
    if (v < 0) v = 0;
    total += v;
  }
  if (total <= 0) throw std::logic_error("degenerate mixed strategy from subgame LP");
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

SubgameSolution subgame_nash(const PayoffMatrix& matrix) {
  const int R = static_cast<int>(matrix.rows.size());
  const int C = static_cast<int>(matrix.cols.size());
  if (R == 0 || C == 0) throw std::invalid_argument("empty payoff matrix");

  double lo = matrix.entries[0], hi = matrix.entries[0];
  for (double v : matrix.entries) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  SubgameSolution sol;
  {
    // Blue side: max v s.t. x^T U_col >= v for every column.
    milp::Model m;
    std::vector<int> x(R);
    for (int i = 0; i < R; ++i) x[i] = m.add_continuous(0.0, 1.0);
    const int v = m.add_continuous(lo, hi);
    for (int j = 0; j < C; ++j) {
      std::vector<std::pair<int, double>> terms{{v, -1.0}};
      for (int i = 0; i < R; ++i)
        if (matrix.at(i, j) != 0.0) terms.emplace_back(x[i], matrix.at(i, j));
      m.add_row(std::move(terms), milp::RowSense::GreaterEqual, 0.0);
    }
    std::vector<std::pair<int, double>> simplex;
    for (int i = 0; i < R; ++i) simplex.emplace_back(x[i], 1.0);
    m.add_row(std::move(simplex), milp::RowSense::Equal, 1.0);
    m.set_objective(milp::ObjSense::Maximize, {{v, 1.0}});
    auto out = milp::solve(m);
    if (out.status != milp::SolveStatus::Optimal)
      throw std::logic_error("subgame LP (blue) not optimal");
    sol.blue_lp_value = out.objective;
    sol.x_blue.resize(R);
    for (int i = 0; i < R; ++i) sol.x_blue[i] = out.primal[x[i]];
  }
  {
    // Red side: min u s.t. U_row y <= u for every row.
    milp::Model m;
    std::vector<int> y(C);
    for (int j = 0; j < C; ++j) y[j] = m.add_continuous(0.0, 1.0);
    const int u = m.add_continuous(lo, hi);
    for (int i = 0; i < R; ++i) {
      std::vector<std::pair<int, double>> terms{{u, -1.0}};
      for (int j = 0; j < C; ++j)
        if (matrix.at(i, j) != 0.0) terms.emplace_back(y[j], matrix.at(i, j));
      m.add_row(std::move(terms), milp::RowSense::LessEqual, 0.0);
    }
    std::vector<std::pair<int, double>> simplex;
    for (int j = 0; j < C; ++j) simplex.emplace_back(y[j], 1.0);
    m.add_row(std::move(simplex), milp::RowSense::Equal, 1.0);
    m.set_objective(milp::ObjSense::Minimize, {{u, 1.0}});
    auto out = milp::solve(m);
    if (out.status != milp::SolveStatus::Optimal)
      throw std::logic_error("subgame LP (red) not optimal");
    sol.red_lp_value = out.objective;
    sol.x_red.resize(C);
    for (int j = 0; j < C; ++j) sol.x_red[j] = out.primal[y[j]];
  }
  sol.x_blue = normalized_simplex(std::move(sol.x_blue));
  sol.x_red = normalized_simplex(std::move(sol.x_red));
  sol.value = sol.blue_lp_value;
  return sol;
}

std::string SolveResult::trace_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "iter,subgame_value,blue_br_value,red_br_value,gap,seconds\n";
  for (const auto& row : trace)
    os << row.iteration << ',' << row.subgame_value << ',' << row.blue_br_value << ','
       << row.red_br_value << ',' << row.gap << ',' << row.seconds << "\n";
  return os.str();
}

SolveResult double_oracle(const Scenario& scenario, const DoubleOracleConfig& config) {
  if (config.epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const auto t0 = Clock::now();
  auto elapsed = [&t0] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  LayeredContext ctx(scenario);
  PayoffEvaluator evaluator(scenario);

  OracleOptions exact;
  exact.mip_rel_gap = config.mip_rel_gap;
  exact.mip_abs_gap = config.mip_abs_gap;
  OracleOptions limited = exact;
  limited.time_limit = config.br_time_limit;

  std::vector<LogisticsPlan> blue_plans;
  std::vector<InterdictionPlan> red_plans;
  std::unordered_set<std::string> blue_keys, red_keys;
  auto add_blue = [&](const LogisticsPlan& plan) {
    if (blue_keys.insert(plan.key()).second) {
      blue_plans.push_back(plan);
      return true;
    }
    return false;
  };
  auto add_red = [&](const InterdictionPlan& plan) {
    if (red_keys.insert(plan.key()).second) {
      red_plans.push_back(plan);
      return true;
    }
    return false;
  };

  // Initial subgame: Blue's no-Red optimum against Red's empty interdiction.
  add_red(InterdictionPlan{});
  for (const auto& plan : config.initial_red) add_red(make_interdiction_plan(scenario, plan.edges));
  {
    RedMixedStrategy empty;
    empty.add(InterdictionPlan{}, 1.0);
    add_blue(blue_best_response(scenario, ctx, empty, exact).plan);
  }
  for (const auto& plan : config.initial_blue) {
    if (plan.routes.size() != scenario.connectors.size())
      throw std::invalid_argument("initial plan does not cover every connector");
    for (int c = 0; c < static_cast<int>(plan.routes.size()); ++c)
      ctx.route_to_layered(c, plan.routes[c]);
    add_blue(plan);
  }

  SolveResult result;
  result.termination = "iteration-cap";

  SubgameSolution sub;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    result.iterations = iter;
    PayoffMatrix matrix = payoff_matrix(scenario, evaluator, blue_plans, red_plans);
    sub = subgame_nash(matrix);

    RedMixedStrategy red_mix;
    for (int j = 0; j < static_cast<int>(red_plans.size()); ++j)
      if (sub.x_red[j] > 1e-12) red_mix.add(red_plans[j], sub.x_red[j]);
    red_mix.prune();
    BlueMixedStrategy blue_mix;
    for (int i = 0; i < static_cast<int>(blue_plans.size()); ++i)
      if (sub.x_blue[i] > 1e-12) blue_mix.add(blue_plans[i], sub.x_blue[i]);
    blue_mix.prune();

    // Warm starts: the best incumbent row and column against the mixtures.
    int warm_row = 0, warm_col = 0;
    double best_row = -milp::kInf, best_col = milp::kInf;
    for (int i = 0; i < static_cast<int>(blue_plans.size()); ++i) {
      double v = 0.0;
      for (int j = 0; j < static_cast<int>(red_plans.size()); ++j)
        v += sub.x_red[j] * matrix.at(i, j);
      if (v > best_row) {
        best_row = v;
        warm_row = i;
      }
    }
    for (int j = 0; j < static_cast<int>(red_plans.size()); ++j) {
      double v = 0.0;
      for (int i = 0; i < static_cast<int>(blue_plans.size()); ++i)
        v += sub.x_blue[i] * matrix.at(i, j);
      if (v < best_col) {
        best_col = v;
        warm_col = j;
      }
    }

    const bool exact_iteration = config.exact_every > 0 && iter % config.exact_every == 0;
    const OracleOptions& opts = exact_iteration ? exact : limited;

    BlueBestResponse bb;
    RedBestResponse rb;
#ifdef _OPENMP
    if (omp_get_max_threads() > 1) {
      std::exception_ptr blue_err, red_err;
#pragma omp parallel sections num_threads(2)
      {
#pragma omp section
        {
          try {
            bb = blue_best_response(scenario, ctx, red_mix, opts, &blue_plans[warm_row]);
          } catch (...) {
            blue_err = std::current_exception();
          }
        }
#pragma omp section
        {
          try {
            rb = red_best_response(scenario, ctx, blue_mix, opts, &red_plans[warm_col]);
          } catch (...) {
            red_err = std::current_exception();
          }
        }
      }
      if (blue_err) std::rethrow_exception(blue_err);
      if (red_err) std::rethrow_exception(red_err);
    } else {
      bb = blue_best_response(scenario, ctx, red_mix, opts, &blue_plans[warm_row]);
      rb = red_best_response(scenario, ctx, blue_mix, opts, &red_plans[warm_col]);
    }
#else
    bb = blue_best_response(scenario, ctx, red_mix, opts, &blue_plans[warm_row]);
    rb = red_best_response(scenario, ctx, blue_mix, opts, &red_plans[warm_col]);
#endif

    double gap = std::max(0.0, bb.value - rb.value);
    result.trace.push_back({iter, sub.value, bb.value, rb.value, gap, elapsed()});

    bool blue_dup = blue_keys.count(bb.plan.key()) > 0;
    bool red_dup = red_keys.count(rb.plan.key()) > 0;

    // Termination requires exactly solved best responses.
    if (gap <= config.epsilon || (blue_dup && red_dup)) {
      if (!bb.optimal || !rb.optimal) {
        bb = blue_best_response(scenario, ctx, red_mix, exact, &bb.plan);
        rb = red_best_response(scenario, ctx, blue_mix, exact, &rb.plan);
        gap = std::max(0.0, bb.value - rb.value);
        result.trace.push_back({iter, sub.value, bb.value, rb.value, gap, elapsed()});
        blue_dup = blue_keys.count(bb.plan.key()) > 0;
        red_dup = red_keys.count(rb.plan.key()) > 0;
      }
      if (gap <= config.epsilon) {
        result.termination = "converged";
      } else if (blue_dup && red_dup) {
        // Exact best responses already in the subgame but the bracket is
        // still wider than epsilon: numerically stuck.
        result.termination = "stalled";
      }
    }

    result.lower_bound = rb.value;
    result.upper_bound = bb.value;
    result.gap = gap;
    if (result.termination != "iteration-cap") break;

    const bool added_blue = add_blue(bb.plan);
    const bool added_red = add_red(rb.plan);
    if (!added_blue && !added_red && bb.optimal && rb.optimal) {
      result.termination = "stalled";
      break;
    }
  }

  result.value = sub.value;
  result.blue.support.clear();
  for (size_t i = 0; i < blue_plans.size() && i < sub.x_blue.size(); ++i)
    if (sub.x_blue[i] > 1e-12) result.blue.add(blue_plans[i], sub.x_blue[i]);
  result.blue.prune();
  for (size_t j = 0; j < red_plans.size() && j < sub.x_red.size(); ++j)
    if (sub.x_red[j] > 1e-12) result.red.add(red_plans[j], sub.x_red[j]);
  result.red.prune();
  result.wall_seconds = elapsed();
  return result;
}

double exploitability(const Scenario& scenario, const BlueMixedStrategy& blue) {
  auto issues = blue.validate();
  if (!issues.empty()) throw std::invalid_argument("invalid mixture: " + issues.front());
  LayeredContext ctx(scenario);
  // Plan feasibility check: every route must map onto the layered graphs.
  for (const auto& plan : blue.support) {
    if (plan.routes.size() != scenario.connectors.size())
      throw std::invalid_argument("plan does not cover every connector");
    for (int c = 0; c < static_cast<int>(plan.routes.size()); ++c)
      ctx.route_to_layered(c, plan.routes[c]);
  }
  return red_best_response(scenario, ctx, blue).value;
}

namespace {

// Single-connector truncated visit signature (see PayoffEvaluator).
std::string connector_sig(const Scenario& s, int c, const std::vector<int>& route,
                          const InterdictionPlan& red) {
  std::ostringstream os;
  int t = 0;
  os << s.warehouse_index(s.connectors[c].initial_location) << "@0";
  for (int e : route) {
    const bool cut = red.contains(e);
    t += s.connectors[c].traversal_time.at(e);
    if (!cut) {
      const int w = s.warehouse_index(s.graph.edges[e].head);
      if (w >= 0) os << ',' << w << '@' << t;
    }
    if (cut) break;
  }
  return os.str();
}

}  // namespace

BruteForceResult exact_nash_bruteforce(const Scenario& scenario, const BruteForceCaps& caps) {
  LayeredContext ctx(scenario);
  const int C = ctx.num_connectors();

  std::vector<std::vector<std::vector<int>>> routes(C);  // physical-edge routes
  double product = 1.0;
  for (int c = 0; c < C; ++c) {
    auto paths = ctx.graph(c).enumerate_paths(caps.max_blue_plans);
    routes[c].reserve(paths.size());
    for (auto& p : paths) {
      std::vector<int> phys;
      phys.reserve(p.size());
      for (int e : p) phys.push_back(ctx.graph(c).edge(e).phys_edge);
      routes[c].push_back(std::move(phys));
    }
    product *= static_cast<double>(routes[c].size());
    if (routes[c].empty()) throw std::runtime_error("connector has no feasible path");
  }
  if (product > static_cast<double>(caps.max_blue_plans))
    throw std::runtime_error("blue plan enumeration exceeds the cap");
  const std::int64_t total = static_cast<std::int64_t>(product);

  std::vector<InterdictionPlan> reds =
      enumerate_interdiction_plans(scenario, caps.max_red_plans);
  const int R = static_cast<int>(reds.size());

  // Intern per-connector visit signatures for every (route, interdiction).
  std::vector<std::vector<std::vector<int>>> sig(C);
  std::vector<std::unordered_map<std::string, int>> interned(C);
  for (int c = 0; c < C; ++c) {
    sig[c].assign(routes[c].size(), std::vector<int>(R));
    for (size_t i = 0; i < routes[c].size(); ++i)
      for (int r = 0; r < R; ++r) {
        const std::string key = connector_sig(scenario, c, routes[c][i], reds[r]);
        auto [it, inserted] =
            interned[c].try_emplace(key, static_cast<int>(interned[c].size()));
        (void)inserted;
        sig[c][i][r] = it->second;
      }
  }

  auto decode = [&](std::int64_t plan_idx) {
    std::vector<int> idx(C);
    for (int c = C - 1; c >= 0; --c) {
      idx[c] = static_cast<int>(plan_idx % routes[c].size());
      plan_idx /= static_cast<int64_t>(routes[c].size());
    }
    return idx;
  };

  // Collapse payoff-equivalent rows: two plans with identical signature rows
  // have identical utilities against every interdiction.
  std::unordered_map<std::uint64_t, std::vector<std::int64_t>> buckets;
  std::vector<std::int64_t> reps;
  auto row_equal = [&](std::int64_t a, std::int64_t b) {
    const auto ia = decode(a), ib = decode(b);
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c)
        if (sig[c][ia[c]][r] != sig[c][ib[c]][r]) return false;
    return true;
  };
  for (std::int64_t plan = 0; plan < total; ++plan) {
    const auto idx = decode(plan);
    std::uint64_t h = 1469598103934665603ULL;
    for (int r = 0; r < R; ++r)
      for (int c = 0; c < C; ++c) {
        h ^= static_cast<std::uint64_t>(sig[c][idx[c]][r]) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
      }
    auto& bucket = buckets[h];
    bool found = false;
    for (std::int64_t other : bucket)
      if (row_equal(plan, other)) {
        found = true;
        break;
      }
    if (!found) {
      bucket.push_back(plan);
      reps.push_back(plan);
    }
  }

  PayoffEvaluator evaluator(scenario);
  auto plan_of = [&](std::int64_t plan_idx) {
    LogisticsPlan plan;
    const auto idx = decode(plan_idx);
    plan.routes.resize(C);
    for (int c = 0; c < C; ++c) plan.routes[c] = routes[c][idx[c]];
    return plan;
  };
  // (representative ordinal, red ordinal) -> utility, filled lazily.
  std::unordered_map<std::int64_t, double> cell;
  auto utility = [&](int rep, int red) {
    const std::int64_t key = static_cast<std::int64_t>(rep) * R + red;
    auto it = cell.find(key);
    if (it != cell.end()) return it->second;
    const double v = evaluator.value(plan_of(reps[rep]), reds[red]);
    cell.emplace(key, v);
    return v;
  };

  // Double oracle over the enumerated game with exhaustive scans as the
  // best-response oracles; exact at gap zero.
  std::vector<int> act_rows{0}, act_cols{0};
  std::set<int> row_set{0}, col_set{0};
  SubgameSolution sub;
  const double scale = 1.0 + scenario.max_utility();
  for (int guard = 0;; ++guard) {
    if (guard > static_cast<int>(reps.size()) + R + 10)
      throw std::logic_error("brute-force double oracle failed to converge");
    PayoffMatrix matrix;
    matrix.rows.resize(act_rows.size());
    matrix.cols.resize(act_cols.size());
    matrix.entries.resize(act_rows.size() * act_cols.size());
    for (size_t i = 0; i < act_rows.size(); ++i)
      for (size_t j = 0; j < act_cols.size(); ++j)
        matrix.entries[i * act_cols.size() + j] = utility(act_rows[i], act_cols[j]);
    sub = subgame_nash(matrix);

    // Exhaustive best responses.
    double best_blue = -milp::kInf;
    int best_row = -1;
    for (int rep = 0; rep < static_cast<int>(reps.size()); ++rep) {
      double v = 0.0;
      for (size_t j = 0; j < act_cols.size(); ++j)
        if (sub.x_red[j] > 1e-15) v += sub.x_red[j] * utility(rep, act_cols[j]);
      if (v > best_blue + 1e-15) {
        best_blue = v;
        best_row = rep;
      }
    }
    double best_red = milp::kInf;
    int best_col = -1;
    for (int red = 0; red < R; ++red) {
      double v = 0.0;
      for (size_t i = 0; i < act_rows.size(); ++i)
        if (sub.x_blue[i] > 1e-15) v += sub.x_blue[i] * utility(act_rows[i], red);
      if (v < best_red - 1e-15) {
        best_red = v;
        best_col = red;
      }
    }
    const double gap = best_blue - best_red;
    bool grew = false;
    if (gap > 1e-10 * scale) {
      if (best_row >= 0 && !row_set.count(best_row)) {
        act_rows.push_back(best_row);
        row_set.insert(best_row);
        grew = true;
      }
      if (best_col >= 0 && !col_set.count(best_col)) {
        act_cols.push_back(best_col);
        col_set.insert(best_col);
        grew = true;
      }
    }
    if (!grew) {
      BruteForceResult result;
      result.value = sub.value;
      result.total_blue_plans = total;
      result.distinct_rows = static_cast<std::int64_t>(reps.size());
      for (size_t i = 0; i < act_rows.size(); ++i)
        if (sub.x_blue[i] > 1e-12) result.blue.add(plan_of(reps[act_rows[i]]), sub.x_blue[i]);
      result.blue.prune();
      for (size_t j = 0; j < act_cols.size(); ++j)
        if (sub.x_red[j] > 1e-12) result.red.add(reds[act_cols[j]], sub.x_red[j]);
      result.red.prune();
      return result;
    }
  }
}

}  // namespace clg
