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

#ifndef CLG_MILP_HPP_
#define CLG_MILP_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace clg::milp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class ObjSense { Minimize, Maximize };
enum class SolveStatus { Optimal, FeasibleTimeLimit, Infeasible, Unbounded, Error };

const char* to_string(SolveStatus status);

// Model builder. Everything upstream expresses LPs/MILPs through this
// surface; the solver behind it is interchangeable.
class Model {
 public:
  struct Var {
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf;
    std::string name;
  };
  struct Row {
    std::vector<std::pair<int, double>> terms;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
    std::string name;
  };

  int add_var(VarKind kind, double lb, double ub, std::string name = {});
  int add_continuous(double lb, double ub, std::string name = {}) {
    return add_var(VarKind::Continuous, lb, ub, std::move(name));
  }
  int add_binary(std::string name = {}) { return add_var(VarKind::Binary, 0.0, 1.0, std::move(name)); }
  int add_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs,
              std::string name = {});
  void set_objective(ObjSense sense, const std::vector<std::pair<int, double>>& terms,
                     double constant = 0.0);
  void set_obj_coef(int var, double coef);
  void set_bounds(int var, double lb, double ub);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Var& var(int i) const { return vars_[i]; }
  const Row& row(int i) const { return rows_[i]; }
  ObjSense obj_sense() const { return obj_sense_; }
  const std::vector<double>& obj() const { return obj_; }
  double obj_constant() const { return obj_constant_; }
  bool has_binaries() const;

  // Well-formedness: referenced variables declared, coefficients finite.
  std::vector<std::string> check() const;

  // CPLEX LP-format text for offline debugging.
  std::string to_lp_format() const;

 private:
  std::vector<Var> vars_;
  std::vector<Row> rows_;
  ObjSense obj_sense_ = ObjSense::Minimize;
  std::vector<double> obj_;
  double obj_constant_ = 0.0;
};

struct SolveOptions {
  double time_limit = kInf;  // seconds
  double mip_rel_gap = 1e-6;
  double mip_abs_gap = 1e-9;
  bool want_duals = false;
  bool use_presolve = true;
  // Optional feasible point (full variable vector) used as the initial
  // incumbent for MILPs; ignored when infeasible.
  std::vector<double> warm_start;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Error;
  std::vector<double> primal;  // per variable; present iff a solution exists
  std::vector<double> duals;   // per row; filled for pure LPs when want_duals
  double objective = 0.0;
  double best_bound = 0.0;
  double wall_seconds = 0.0;
  std::int64_t lp_iterations = 0;
  std::int64_t nodes = 0;
  std::string message;

  bool has_solution() const {
    return status == SolveStatus::Optimal || status == SolveStatus::FeasibleTimeLimit;
  }
};

// Solves with the currently selected backend (default: the bundled simplex /
// branch-and-bound implementation).
SolveOutcome solve(const Model& model, const SolveOptions& options = {});

using Backend = std::function<SolveOutcome(const Model&, const SolveOptions&)>;
void register_backend(const std::string& name, Backend backend);
std::vector<std::string> backend_names();
bool set_backend(const std::string& name);
std::string current_backend();

// The bundled solver, callable directly (used by tests and as the default).
SolveOutcome solve_with_bundled(const Model& model, const SolveOptions& options);

// Slow dense textbook simplex kept as a reference implementation; used by the
// test suite as an oracle for randomized LPs and by the benchmark target.
// Handles pure LPs only (no binaries).
SolveOutcome solve_with_reference(const Model& model, const SolveOptions& options);

}  // namespace clg::milp

#endif  // CLG_MILP_HPP_
