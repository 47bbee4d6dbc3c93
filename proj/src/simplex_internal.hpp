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

#ifndef CLG_SIMPLEX_INTERNAL_HPP_
#define CLG_SIMPLEX_INTERNAL_HPP_

#include <chrono>
#include <cstdint>
#include <vector>

#include "clg/milp.hpp"

namespace clg::milp::internal {

// Internal minimize-form LP: structural columns followed by one slack per
// row, so that A x + s = rhs with the row sense folded into the slack bounds.
struct LpProblem {
  int n = 0;  // structural variables
  int m = 0;  // rows
  std::vector<std::vector<std::pair<int, double>>> cols;  // size n + m
  std::vector<double> lb, ub;                             // size n + m
  std::vector<double> cost;                               // size n + m, min sense
  std::vector<double> rhs;                                // size m
  double obj_constant = 0.0;
  bool maximize = false;

  int total() const { return n + m; }
};

LpProblem build_problem(const Model& model);

enum class LpStatus { Optimal, Infeasible, Unbounded, TimeLimit, Error };

enum VarStatus : signed char { kBasic = 0, kAtLower = 1, kAtUpper = 2, kFree = 3 };

using Clock = std::chrono::steady_clock;

// Bounded-variable primal revised simplex with a product-form basis inverse.
// Bounds may be overridden between runs (branch-and-bound reuses one
// instance across nodes, warm-starting from the previous basis).
class Simplex {
 public:
  explicit Simplex(const LpProblem& p);

  void set_bounds(int j, double lb, double ub);
  double lower(int j) const { return lb_[j]; }
  double upper(int j) const { return ub_[j]; }

  void reset_basis();  // all-slack cold basis
  const std::vector<signed char>& vstat() const { return vstat_; }
  void load_vstat(const std::vector<signed char>& vstat);
  // Recomputes basic values under the current factorization; required after
  // bound changes on nonbasic variables.
  void refresh_basics() { compute_basics(); }

  LpStatus run(Clock::time_point deadline);
  // Dual simplex pass for re-solves after bound changes: branching only ever
  // fixes variables, so the warm basis stays dual feasible and a few dual
  // pivots restore primal feasibility. Finishes through run() to certify.
  LpStatus run_dual(Clock::time_point deadline);

  double objective() const;                 // internal min sense, incl. constant
  double value(int j) const { return x_[j]; }
  const std::vector<double>& values() const { return x_; }
  std::vector<double> row_duals();          // y = B^{-T} c_B (min sense)
  // Reduced costs of all columns at the current basis (min sense).
  std::vector<double> reduced_costs();
  std::int64_t iterations() const { return iterations_; }

 private:
  struct Eta {
    int pivot_row;
    double pivot_val;
    int start, len;  // slice into eta_idx_/eta_val_, excludes the pivot entry
  };

  void factorize();
  void lu_solve_column(const std::vector<std::pair<int, double>>& col);
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  // Pattern-driven variants for sparse right-hand sides; `v` is a dense
  // scatter array that is zero outside `pattern` on entry and exit.
  void ftran_sparse(std::vector<double>& v, std::vector<int>& pattern) const;
  void btran_sparse(std::vector<double>& v, std::vector<int>& pattern) const;
  void compute_basics();
  double infeasibility() const;
  bool price(bool phase1, const std::vector<double>& y, bool bland, int& q, int& dir) const;
  void append_eta(const std::vector<double>& alpha, const std::vector<int>& alpha_nz, int row);

  const LpProblem* p_;
  std::vector<double> lb_, ub_;
  std::vector<signed char> vstat_;
  std::vector<int> basis_;  // column per row position
  std::vector<double> x_;

  // Left-looking sparse LU of the factored basis (Gilbert-Peierls), plus
  // product-form update etas appended per pivot until the next refactor.
  std::vector<int> lu_row_;                 // processing position -> pivot row
  std::vector<int> lu_pos_;                 // row -> processing position
  std::vector<int> l_start_, l_idx_;        // L strictly below unit diagonal (row indices)
  std::vector<double> l_val_;
  std::vector<int> u_start_, u_idx_;        // U above the diagonal (position indices)
  std::vector<double> u_val_;
  std::vector<double> u_diag_;
  // Reverse adjacencies for the transposed solves: which U columns reference
  // a position, and which L columns contain a row.
  std::vector<int> u_rev_start_, u_rev_idx_;
  std::vector<int> l_rev_start_, l_rev_idx_;
  // Scratch for the sparse triangular solves.
  std::vector<double> lu_work_;
  std::vector<int> lu_pattern_, lu_stack_;
  mutable std::vector<int> lu_stamp_, pos_stamp_, work_pos_;
  mutable int lu_epoch_ = 0;

  std::vector<Eta> etas_;  // update etas only
  std::vector<int> eta_idx_;
  std::vector<double> eta_val_;
  std::int64_t iterations_ = 0;

  std::vector<double> work_y_, work_alpha_, work_r_, work_d_, work_rho_;
  std::vector<double> dual_weights_;    // devex weights per basis row (dual)
  std::vector<double> primal_weights_;  // devex weights per column (primal)
};

struct LpRunResult {
  LpStatus status = LpStatus::Error;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// One-shot LP solve used for models without binaries.
SolveOutcome solve_lp(const Model& model, const SolveOptions& options);

// Branch-and-bound over the bundled simplex.
SolveOutcome solve_mip(const Model& model, const SolveOptions& options);

// In-place presolve: tightens bounds / fixes variables and drops redundant
// rows; variable indexing is preserved. Returns false when infeasibility is
// detected during reduction.
struct PresolveResult {
  bool feasible = true;
  std::vector<double> lb, ub;     // per variable
  std::vector<char> keep_row;     // per row
  std::vector<Model::Row> rows;   // reduced rows (fixed vars substituted)
};
PresolveResult presolve(const Model& model, double feas_tol);

}  // namespace clg::milp::internal

#endif  // CLG_SIMPLEX_INTERNAL_HPP_
