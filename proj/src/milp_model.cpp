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
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "clg/milp.hpp"

namespace clg::milp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleTimeLimit: return "feasible-time-limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Error: return "error";
  }
  return "unknown";
}

int Model::add_var(VarKind kind, double lb, double ub, std::string name) {
  if (kind == VarKind::Binary) {
    lb = std::max(lb, 0.0);
    ub = std::min(ub, 1.0);
  }
  if (lb > ub) throw std::invalid_argument("variable with lb > ub: " + name);
  vars_.push_back(Var{kind, lb, ub, std::move(name)});
  obj_.push_back(0.0);
  return num_vars() - 1;
}

int Model::add_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs,
                   std::string name) {
  for (auto& [v, coef] : terms) {
    if (v < 0 || v >= num_vars())
      throw std::invalid_argument("row references undeclared variable");
    if (!std::isfinite(coef)) throw std::invalid_argument("non-finite row coefficient");
  }
  rows_.push_back(Row{std::move(terms), sense, rhs, std::move(name)});
  return num_rows() - 1;
}

void Model::set_objective(ObjSense sense, const std::vector<std::pair<int, double>>& terms,
                          double constant) {
  obj_sense_ = sense;
  obj_.assign(num_vars(), 0.0);
  obj_constant_ = constant;
  for (const auto& [v, coef] : terms) set_obj_coef(v, coef);
}

void Model::set_obj_coef(int var, double coef) {
  if (var < 0 || var >= num_vars()) throw std::invalid_argument("objective on undeclared variable");
  if (!std::isfinite(coef)) throw std::invalid_argument("non-finite objective coefficient");
  obj_[var] = coef;
}

void Model::set_bounds(int var, double lb, double ub) {
  if (lb > ub) throw std::invalid_argument("set_bounds with lb > ub");
  vars_[var].lb = lb;
  vars_[var].ub = ub;
}

bool Model::has_binaries() const {
  for (const auto& v : vars_)
    if (v.kind == VarKind::Binary) return true;
  return false;
}

std::vector<std::string> Model::check() const {
  std::vector<std::string> issues;
  for (int i = 0; i < num_vars(); ++i) {
    const Var& v = vars_[i];
    if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub)
      issues.push_back("variable " + std::to_string(i) + " has invalid bounds");
  }
  for (int r = 0; r < num_rows(); ++r) {
    for (const auto& [v, coef] : rows_[r].terms) {
      if (v < 0 || v >= num_vars())
        issues.push_back("row " + std::to_string(r) + " references undeclared variable");
      if (!std::isfinite(coef))
        issues.push_back("row " + std::to_string(r) + " has a non-finite coefficient");
    }
    if (!std::isfinite(rows_[r].rhs))
      issues.push_back("row " + std::to_string(r) + " has a non-finite rhs");
  }
  return issues;
}

namespace {

std::string var_name(const Model& m, int i) {
  if (!m.var(i).name.empty()) return m.var(i).name;
  return "x" + std::to_string(i);
}

void write_terms(std::ostringstream& os, const Model& m,
                 const std::vector<std::pair<int, double>>& terms) {
  bool first = true;
  for (const auto& [v, coef] : terms) {
    if (coef == 0) continue;
    if (first) {
      os << (coef < 0 ? "- " : "");
      first = false;
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    os << std::abs(coef) << ' ' << var_name(m, v);
  }
  if (first) os << "0 " << var_name(m, 0);
}

}  // namespace

std::string Model::to_lp_format() const {
  std::ostringstream os;
  os.precision(17);
  os << (obj_sense_ == ObjSense::Maximize ? "Maximize" : "Minimize") << "\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int i = 0; i < num_vars(); ++i)
    if (obj_[i] != 0) obj_terms.emplace_back(i, obj_[i]);
  write_terms(os, *this, obj_terms);
  os << "\nSubject To\n";
  for (int r = 0; r < num_rows(); ++r) {
    os << ' ' << (rows_[r].name.empty() ? "c" + std::to_string(r) : rows_[r].name) << ": ";
    write_terms(os, *this, rows_[r].terms);
    switch (rows_[r].sense) {
      case RowSense::LessEqual: os << " <= "; break;
      case RowSense::Equal: os << " = "; break;
      case RowSense::GreaterEqual: os << " >= "; break;
    }
    os << rows_[r].rhs << "\n";
  }
  os << "Bounds\n";
  for (int i = 0; i < num_vars(); ++i) {
    const Var& v = vars_[i];
    if (v.lb == -kInf && v.ub == kInf)
      os << ' ' << var_name(*this, i) << " free\n";
    else if (v.lb == -kInf)
      os << ' ' << var_name(*this, i) << " <= " << v.ub << "\n";
    else if (v.ub == kInf)
      os << ' ' << var_name(*this, i) << " >= " << v.lb << "\n";
    else
      os << ' ' << v.lb << " <= " << var_name(*this, i) << " <= " << v.ub << "\n";
  }
  bool any_bin = false;
  for (int i = 0; i < num_vars(); ++i)
    if (vars_[i].kind == VarKind::Binary) {
      if (!any_bin) os << "Binaries\n";
      any_bin = true;
      os << ' ' << var_name(*this, i) << "\n";
    }
  os << "End\n";
  return os.str();
}

namespace {

struct Registry {
  std::mutex mu;
  std::map<std::string, Backend> backends;
  std::string current = "simplex";
};

Registry& registry() {
  static Registry r;
  static std::once_flag once;
  std::call_once(once, [] {
    r.backends["simplex"] = [](const Model& m, const SolveOptions& o) {
      return solve_with_bundled(m, o);
    };
    r.backends["reference"] = [](const Model& m, const SolveOptions& o) {
      return solve_with_reference(m, o);
    };
  });
  return r;
}

}  // namespace

void register_backend(const std::string& name, Backend backend) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  r.backends[name] = std::move(backend);
}

std::vector<std::string> backend_names() {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, _] : r.backends) names.push_back(name);
  return names;
}

bool set_backend(const std::string& name) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  if (!r.backends.count(name)) return false;
  r.current = name;
  return true;
}

std::string current_backend() {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.current;
}

SolveOutcome solve(const Model& model, const SolveOptions& options) {
  Backend backend;
  {
    Registry& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.backends.find(r.current);
    if (it == r.backends.end()) {
      SolveOutcome out;
      out.status = SolveStatus::Error;
      out.message = "backend unavailable: " + r.current;
      return out;
    }
    backend = it->second;
  }
  return backend(model, options);
}

}  // namespace clg::milp
