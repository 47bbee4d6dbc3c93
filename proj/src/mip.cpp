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
//
// Branch and bound over the bundled simplex: best-bound node selection with
// depth-first plunging, pseudocost branching, and warm starts from the parent
// basis. Node ordering never depends on wall time, so results are
// deterministic and monotone in the time limit.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <queue>
#include <unordered_map>

#include "simplex_internal.hpp"

namespace clg::milp::internal {

namespace {

constexpr double kIntTol = 1e-6;

struct Decision {
  std::shared_ptr<Decision> parent;
  int var;
  double lb, ub;
  double dist = 0.5;  // fractional distance from the parent LP value
};

struct Node {
  double bound;  // parent LP objective, internal min sense
  int depth;
  std::int64_t seq;
  std::shared_ptr<Decision> chain;
  std::vector<signed char> vstat;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.seq > b.seq;
  }
};

double row_activity(const Model::Row& row, const std::vector<double>& x) {
  double act = 0.0;
  for (const auto& [v, coef] : row.terms) act += coef * x[v];
  return act;
}

bool point_feasible(const Model& model, const std::vector<double>& x, double tol) {
  if (static_cast<int>(x.size()) != model.num_vars()) return false;
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.var(j);
    if (x[j] < v.lb - tol || x[j] > v.ub + tol) return false;
    if (v.kind == VarKind::Binary && std::abs(x[j] - std::round(x[j])) > tol) return false;
  }
  for (int r = 0; r < model.num_rows(); ++r) {
    const auto& row = model.row(r);
    const double act = row_activity(row, x);
    const double scale = 1.0 + std::abs(row.rhs);
    switch (row.sense) {
      case RowSense::LessEqual:
        if (act > row.rhs + tol * scale) return false;
        break;
      case RowSense::GreaterEqual:
        if (act < row.rhs - tol * scale) return false;
        break;
      case RowSense::Equal:
        if (std::abs(act - row.rhs) > tol * scale) return false;
        break;
    }
  }
  return true;
}

}  // namespace

PresolveResult presolve(const Model& model, double feas_tol) {
  PresolveResult res;
  const int n = model.num_vars();
  res.lb.resize(n);
  res.ub.resize(n);
  for (int j = 0; j < n; ++j) {
    res.lb[j] = model.var(j).lb;
    res.ub[j] = model.var(j).ub;
  }
  std::vector<Model::Row> rows;
  rows.reserve(model.num_rows());
  for (int r = 0; r < model.num_rows(); ++r) rows.push_back(model.row(r));
  std::vector<char> alive(rows.size(), 1);

  auto snap_binary = [&](int j) {
    if (model.var(j).kind != VarKind::Binary) return;
    if (res.lb[j] > 1e-9) res.lb[j] = 1.0;
    if (res.ub[j] < 1.0 - 1e-9) res.ub[j] = 0.0;
  };
  auto fix_var = [&](int j, double value) -> bool {
    if (value < res.lb[j] - feas_tol || value > res.ub[j] + feas_tol) return false;
    value = std::clamp(value, res.lb[j], res.ub[j]);
    if (model.var(j).kind == VarKind::Binary) {
      const double r = std::round(value);
      if (std::abs(value - r) > 1e-7) return false;
      value = r;
    }
    res.lb[j] = res.ub[j] = value;
    return true;
  };

  bool changed = true;
  for (int pass = 0; pass < 8 && changed; ++pass) {
    changed = false;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (!alive[r]) continue;
      Model::Row& row = rows[r];
      // Fold fixed variables into the rhs.
      double rhs = row.rhs;
      std::vector<std::pair<int, double>> terms;
      terms.reserve(row.terms.size());
      for (const auto& [v, coef] : row.terms) {
        if (coef == 0.0) continue;
        if (res.ub[v] - res.lb[v] <= 1e-12) {
          rhs -= coef * res.lb[v];
        } else {
          terms.emplace_back(v, coef);
        }
      }
      if (terms.size() != row.terms.size() || rhs != row.rhs) changed = true;
      row.terms = std::move(terms);
      row.rhs = rhs;

      double min_act = 0.0, max_act = 0.0;
      int min_infs = 0, max_infs = 0;
      for (const auto& [v, coef] : row.terms) {
        const double lo = coef > 0 ? res.lb[v] : res.ub[v];
        const double hi = coef > 0 ? res.ub[v] : res.lb[v];
        if (std::abs(lo) == kInf)
          ++min_infs;
        else
          min_act += coef * lo;
        if (std::abs(hi) == kInf)
          ++max_infs;
        else
          max_act += coef * hi;
      }
      const double lo_act = min_infs ? -kInf : min_act;
      const double hi_act = max_infs ? kInf : max_act;
      const double tol = feas_tol * (1.0 + std::abs(row.rhs));

      // Infeasibility and redundancy.
      if (row.sense != RowSense::GreaterEqual && lo_act > row.rhs + tol) {
        res.feasible = false;
        return res;
      }
      if (row.sense != RowSense::LessEqual && hi_act < row.rhs - tol) {
        res.feasible = false;
        return res;
      }
      if (row.terms.empty()) {
        alive[r] = 0;
        changed = true;
        continue;
      }
      const bool le_redundant = hi_act <= row.rhs + 1e-11 * (1.0 + std::abs(row.rhs));
      const bool ge_redundant = lo_act >= row.rhs - 1e-11 * (1.0 + std::abs(row.rhs));
      if ((row.sense == RowSense::LessEqual && le_redundant) ||
          (row.sense == RowSense::GreaterEqual && ge_redundant) ||
          (row.sense == RowSense::Equal && le_redundant && ge_redundant)) {
        alive[r] = 0;
        changed = true;
        continue;
      }

      // Forcing rows pin every variable to the bound achieving the activity.
      const double force_tol = 1e-11 * (1.0 + std::abs(row.rhs));
      const bool forces_min = !min_infs && row.sense != RowSense::GreaterEqual &&
                              lo_act >= row.rhs - force_tol;
      const bool forces_max = !max_infs && row.sense != RowSense::LessEqual &&
                              hi_act <= row.rhs + force_tol;
      if (forces_min || forces_max) {
        bool ok = true;
        for (const auto& [v, coef] : row.terms) {
          const double value = forces_min ? (coef > 0 ? res.lb[v] : res.ub[v])
                                          : (coef > 0 ? res.ub[v] : res.lb[v]);
          ok = ok && fix_var(v, value);
        }
        if (!ok) {
          res.feasible = false;
          return res;
        }
        alive[r] = 0;
        changed = true;
        continue;
      }

      // Singleton rows tighten a bound and disappear.
      if (row.terms.size() == 1) {
        const auto [v, coef] = row.terms[0];
        const double implied = row.rhs / coef;
        const bool upper = (row.sense == RowSense::LessEqual) == (coef > 0);
        if (row.sense == RowSense::Equal) {
          if (!fix_var(v, implied)) {
            res.feasible = false;
            return res;
          }
        } else if (upper) {
          if (implied < res.ub[v]) res.ub[v] = implied;
        } else {
          if (implied > res.lb[v]) res.lb[v] = implied;
        }
        snap_binary(v);
        if (res.lb[v] > res.ub[v] + feas_tol) {
          res.feasible = false;
          return res;
        }
        if (res.lb[v] > res.ub[v]) res.lb[v] = res.ub[v];
        alive[r] = 0;
        changed = true;
        continue;
      }
    }
  }

  // Duplicate-row merge (identical terms and sense: keep the tightest rhs).
  std::map<std::pair<std::vector<std::pair<int, double>>, int>, size_t> seen;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!alive[r]) continue;
    auto sorted = rows[r].terms;
    std::sort(sorted.begin(), sorted.end());
    auto key = std::make_pair(std::move(sorted), static_cast<int>(rows[r].sense));
    auto [it, inserted] = seen.try_emplace(std::move(key), r);
    if (inserted) continue;
    Model::Row& kept = rows[it->second];
    switch (rows[r].sense) {
      case RowSense::LessEqual:
        kept.rhs = std::min(kept.rhs, rows[r].rhs);
        break;
      case RowSense::GreaterEqual:
        kept.rhs = std::max(kept.rhs, rows[r].rhs);
        break;
      case RowSense::Equal:
        if (std::abs(kept.rhs - rows[r].rhs) > feas_tol * (1.0 + std::abs(kept.rhs))) {
          res.feasible = false;
          return res;
        }
        break;
    }
    alive[r] = 0;
  }

  res.keep_row.assign(rows.size(), 0);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!alive[r]) continue;
    res.keep_row[r] = 1;
    res.rows.push_back(rows[r]);
  }
  return res;
}

SolveOutcome solve_mip(const Model& model, const SolveOptions& options) {
  SolveOutcome out;
  const auto t0 = Clock::now();
  auto deadline = options.time_limit == kInf
                      ? Clock::time_point::max()
                      : t0 + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(options.time_limit));
  auto finish = [&](SolveStatus status) {
    out.status = status;
    out.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  };

  // MIP-safe presolve, keeping variable indices in place.
  Model reduced;
  const Model* work = &model;
  if (options.use_presolve) {
    PresolveResult pre = presolve(model, kIntTol * 1e-3);
    if (!pre.feasible) return finish(SolveStatus::Infeasible);
    Model stripped;
    for (int j = 0; j < model.num_vars(); ++j)
      stripped.add_var(model.var(j).kind, pre.lb[j], pre.ub[j], model.var(j).name);
    stripped.set_objective(model.obj_sense(), {}, model.obj_constant());
    for (int j = 0; j < model.num_vars(); ++j) stripped.set_obj_coef(j, model.obj()[j]);
    for (const auto& row : pre.rows) stripped.add_row(row.terms, row.sense, row.rhs, row.name);
    reduced = std::move(stripped);
    work = &reduced;
  }

  LpProblem problem = build_problem(*work);
  Simplex simplex(problem);
  const double sign = problem.maximize ? -1.0 : 1.0;

  std::vector<int> binaries;
  for (int j = 0; j < work->num_vars(); ++j)
    if (work->var(j).kind == VarKind::Binary) binaries.push_back(j);

  // Incumbent, internal min sense.
  double incumbent = kInf;
  std::vector<double> best_x;
  if (!options.warm_start.empty() && point_feasible(model, options.warm_start, kIntTol) &&
      point_feasible(*work, options.warm_start, 1e-4)) {
    best_x = options.warm_start;
    for (int j : binaries) best_x[j] = std::round(best_x[j]);
    incumbent = sign * model.obj_constant();
    for (int j = 0; j < model.num_vars(); ++j) incumbent += sign * model.obj()[j] * best_x[j];
  }

  auto gap_closed = [&](double bound) {
    if (incumbent == kInf) return false;
    const double gap = incumbent - bound;
    return gap <= options.mip_abs_gap || gap <= options.mip_rel_gap * (1.0 + std::abs(incumbent));
  };

  // Pseudocosts.
  std::vector<double> pc_up(work->num_vars(), 0.0), pc_down(work->num_vars(), 0.0);
  std::vector<int> pc_up_n(work->num_vars(), 0), pc_down_n(work->num_vars(), 0);
  for (int j : binaries) {
    const double c = std::abs(problem.cost[j]);
    pc_up[j] = pc_down[j] = c + 0.1;
  }
  auto pc_update = [&](int var, bool up, double delta, double dist) {
    if (dist < 1e-6) return;
    const double unit = std::max(0.0, delta) / dist;
    if (up) {
      pc_up[var] = (pc_up[var] * pc_up_n[var] + unit) / (pc_up_n[var] + 1);
      ++pc_up_n[var];
    } else {
      pc_down[var] = (pc_down[var] * pc_down_n[var] + unit) / (pc_down_n[var] + 1);
      ++pc_down_n[var];
    }
  };

  // Bound management: only branched variables ever differ from the root box.
  std::unordered_map<int, std::pair<double, double>> applied;
  auto activate = [&](const std::shared_ptr<Decision>& chain) {
    std::unordered_map<int, std::pair<double, double>> target;
    for (const Decision* d = chain.get(); d != nullptr; d = d->parent.get())
      target.try_emplace(d->var, std::make_pair(d->lb, d->ub));
    for (const auto& [var, bounds] : applied) {
      (void)bounds;
      if (!target.count(var)) simplex.set_bounds(var, work->var(var).lb, work->var(var).ub);
    }
    for (const auto& [var, bounds] : target) simplex.set_bounds(var, bounds.first, bounds.second);
    applied = std::move(target);
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t seq = 0;

  bool root_solved = false;

  std::shared_ptr<Decision> plunge_chain;
  std::vector<signed char> plunge_vstat;
  double plunge_parent_bound = -kInf;
  bool plunging = true;  // start by solving the root

  bool hit_time = false;

  auto frac_of = [&](double v) { return v - std::floor(v); };

  while (true) {
    if (Clock::now() > deadline) {
      hit_time = true;
      break;
    }
    if (!plunging) {
      // Prune the queue against the incumbent, then pop the best node.
      while (!open.empty() && gap_closed(open.top().bound)) open.pop();
      if (open.empty()) break;
      Node node = open.top();
      open.pop();
      plunge_chain = node.chain;
      plunge_vstat = std::move(node.vstat);
      plunge_parent_bound = node.bound;
      plunging = true;
    }

    activate(plunge_chain);
    if (!plunge_vstat.empty())
      simplex.load_vstat(plunge_vstat);
    else
      simplex.refresh_basics();  // same basis, bounds may have moved

    LpStatus status = root_solved ? simplex.run_dual(deadline) : simplex.run(deadline);
    out.lp_iterations = simplex.iterations();
    ++out.nodes;

    static const bool verbose = std::getenv("CLG_MIP_LOG") != nullptr;
    if (verbose)
      std::fprintf(stderr, "[mip] node=%lld open=%zu depth-ish incumbent=%.6g lp_iters=%lld obj=%.6g\n",
                   static_cast<long long>(out.nodes), open.size(),
                   incumbent == kInf ? nan("") : sign * incumbent,
                   static_cast<long long>(out.lp_iterations),
                   status == LpStatus::Optimal ? sign * simplex.objective() : nan(""));

    if (status == LpStatus::TimeLimit) {
      hit_time = true;
      break;
    }
    if (status == LpStatus::Unbounded) {
      // With binaries bounded, an unbounded child implies an unbounded root.
      return finish(SolveStatus::Unbounded);
    }
    if (status == LpStatus::Error) {
      if (incumbent < kInf) break;
      out.message = "simplex failure inside branch and bound";
      return finish(SolveStatus::Error);
    }

    if (!root_solved) {
      root_solved = true;

      if (status == LpStatus::Infeasible && incumbent == kInf)
        return finish(SolveStatus::Infeasible);
    }

    if (status == LpStatus::Infeasible) {
      plunging = false;
      plunge_vstat.clear();
      continue;
    }

    const double lp_obj = simplex.objective();
    const double parent_bound = plunge_parent_bound;
    if (plunge_chain && parent_bound > -kInf) {
      // Refresh pseudocosts using the depth-one delta.
      const Decision* d = plunge_chain.get();
      pc_update(d->var, d->lb > 0.5, lp_obj - parent_bound, d->dist);
    }

    if (gap_closed(lp_obj)) {
      plunging = false;
      plunge_vstat.clear();
      continue;
    }

    // Find the most attractive fractional binary.
    int branch_var = -1;
    double branch_score = -1.0, branch_frac = 0.0;
    for (int j : binaries) {
      const double v = simplex.value(j);
      const double f = frac_of(v);
      if (f < kIntTol || f > 1.0 - kIntTol) continue;
      const double score =
          std::max(pc_down[j] * f, 1e-8) * std::max(pc_up[j] * (1.0 - f), 1e-8);
      if (score > branch_score) {
        branch_score = score;
        branch_var = j;
        branch_frac = f;
      }
    }

    if (branch_var < 0) {
      // Integral: polish by fixing binaries and re-solving the LP so the
      // continuous part is exact for the rounded point.
      std::vector<double> candidate(work->num_vars());
      for (int j = 0; j < work->num_vars(); ++j) candidate[j] = simplex.value(j);
      for (int j : binaries) candidate[j] = std::round(candidate[j]);
      auto saved_applied = applied;
      for (int j : binaries) simplex.set_bounds(j, candidate[j], candidate[j]);
      simplex.refresh_basics();
      LpStatus polish = simplex.run_dual(deadline);
      out.lp_iterations = simplex.iterations();
      double cand_obj;
      bool cand_ok = true;
      if (polish == LpStatus::Optimal) {
        cand_obj = simplex.objective();
        for (int j = 0; j < work->num_vars(); ++j) candidate[j] = simplex.value(j);
        for (int j : binaries) candidate[j] = std::round(candidate[j]);
      } else {
        // Fall back to the node solution only if the rounding did not break
        // a row.
        cand_obj = lp_obj;
        cand_ok = point_feasible(*work, candidate, 1e-5);
      }
      // Restore the node box.
      for (int j : binaries) {
        auto it = saved_applied.find(j);
        if (it != saved_applied.end())
          simplex.set_bounds(j, it->second.first, it->second.second);
        else
          simplex.set_bounds(j, work->var(j).lb, work->var(j).ub);
      }
      applied = std::move(saved_applied);
      if (cand_ok && cand_obj < incumbent) {
        incumbent = cand_obj;
        best_x = std::move(candidate);
      }
      plunging = false;
      plunge_vstat.clear();
      continue;
    }

    // Branch: plunge toward the rounding of the LP value, queue the sibling.
    const bool up_first = branch_frac >= 0.5;
    Node sibling;
    sibling.bound = lp_obj;
    sibling.depth = 0;
    sibling.seq = ++seq;
    sibling.vstat = simplex.vstat();
    auto down =
        std::make_shared<Decision>(Decision{plunge_chain, branch_var, 0.0, 0.0, branch_frac});
    auto up =
        std::make_shared<Decision>(Decision{plunge_chain, branch_var, 1.0, 1.0, 1.0 - branch_frac});
    sibling.chain = up_first ? down : up;
    open.push(std::move(sibling));

    plunge_chain = up_first ? up : down;
    plunge_vstat.clear();  // keep the current basis in place for the child
    plunge_parent_bound = lp_obj;
  }

  // Final bookkeeping: global bound from the frontier.
  double frontier = kInf;
  if (hit_time || incumbent < kInf) {
    frontier = incumbent;
    if (plunging && hit_time) frontier = std::min(frontier, plunge_parent_bound);
    // The queue holds the remaining open bounds.
    while (!open.empty()) {
      frontier = std::min(frontier, open.top().bound);
      open.pop();
    }
    if (!root_solved) frontier = -kInf;
  }

  if (incumbent == kInf) {
    if (hit_time) {
      out.message = "time limit reached before any feasible solution";
      out.best_bound = sign * (root_solved ? frontier : -kInf);
      return finish(SolveStatus::Error);
    }
    return finish(SolveStatus::Infeasible);
  }

  out.objective = sign * incumbent;
  out.best_bound = sign * (hit_time ? frontier : incumbent);
  out.primal = std::move(best_x);
  out.primal.resize(model.num_vars());
  return finish(hit_time && !gap_closed(frontier) ? SolveStatus::FeasibleTimeLimit
                                                  : SolveStatus::Optimal);
}

}  // namespace clg::milp::internal
