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
// Bounded-variable primal revised simplex. The basis inverse is kept in
// product form: a factorization pass builds one eta per basis column
// (triangular columns peeled first, the rest ordered by fill count), and each
// pivot appends an update eta until the next refactorization.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <queue>

#include "simplex_internal.hpp"

namespace clg::milp::internal {

namespace {
constexpr double kFeasTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr double kDropTol = 5e-13;
constexpr int kRefactorInterval = 100;
}  // namespace

namespace {
// Deterministic per-index noise in [0.5, 1): anti-degeneracy perturbations
// must not vary across runs.
double unit_noise(int j, int salt) {
  std::uint64_t z = (static_cast<std::uint64_t>(j) + 1) * 0x9e3779b97f4a7c15ULL +
                    static_cast<std::uint64_t>(salt) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return 0.5 + 0.5 * static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct PhaseTimer {
  double factor = 0, price = 0, ftran = 0, ratio = 0, update = 0, btran = 0, infeas = 0;
  std::int64_t iters = 0, refactors = 0;
  ~PhaseTimer() {
    if (std::getenv("CLG_SIMPLEX_PROF"))
      std::fprintf(stderr,
                   "[simplex] iters=%lld refactors=%lld factor=%.2fs price=%.2fs ftran=%.2fs "
                   "ratio=%.2fs update=%.2fs btran=%.2fs infeas=%.2fs\n",
                   static_cast<long long>(iters), static_cast<long long>(refactors), factor,
                   price, ftran, ratio, update, btran, infeas);
  }
};
PhaseTimer g_timer;
double tick() {
  return std::chrono::duration<double>(Clock::now().time_since_epoch()).count();
}
}  // namespace

LpProblem build_problem(const Model& model) {
  LpProblem p;
  p.n = model.num_vars();
  p.m = model.num_rows();
  p.maximize = model.obj_sense() == ObjSense::Maximize;
  const double sign = p.maximize ? -1.0 : 1.0;
  p.cols.assign(p.total(), {});
  p.lb.resize(p.total());
  p.ub.resize(p.total());
  p.cost.assign(p.total(), 0.0);
  p.rhs.resize(p.m);
  p.obj_constant = sign * model.obj_constant();
  for (int j = 0; j < p.n; ++j) {
    p.lb[j] = model.var(j).lb;
    p.ub[j] = model.var(j).ub;
    p.cost[j] = sign * model.obj()[j];
  }
  for (int i = 0; i < p.m; ++i) {
    const Model::Row& row = model.row(i);
    for (const auto& [v, coef] : row.terms)
      if (coef != 0.0) p.cols[v].emplace_back(i, coef);
    p.rhs[i] = row.rhs;
    const int slack = p.n + i;
    p.cols[slack].emplace_back(i, 1.0);
    switch (row.sense) {
      case RowSense::LessEqual:
        p.lb[slack] = 0.0;
        p.ub[slack] = kInf;
        break;
      case RowSense::Equal:
        p.lb[slack] = 0.0;
        p.ub[slack] = 0.0;
        break;
      case RowSense::GreaterEqual:
        p.lb[slack] = -kInf;
        p.ub[slack] = 0.0;
        break;
    }
  }
  // Merge duplicate coefficients on the same (row, var) pair.
  for (auto& col : p.cols) {
    std::sort(col.begin(), col.end());
    size_t w = 0;
    for (size_t r = 0; r < col.size(); ++r) {
      if (w > 0 && col[w - 1].first == col[r].first)
        col[w - 1].second += col[r].second;
      else
        col[w++] = col[r];
    }
    col.resize(w);
  }
  return p;
}

Simplex::Simplex(const LpProblem& p) : p_(&p), lb_(p.lb), ub_(p.ub) {
  work_y_.resize(p.m);
  work_alpha_.resize(p.m);
  work_r_.resize(p.m);
  reset_basis();
}

void Simplex::set_bounds(int j, double lb, double ub) {
  lb_[j] = lb;
  ub_[j] = ub;
  if (vstat_[j] == kBasic) return;
  // Snap nonbasic variables into the new box.
  if (lb == ub) {
    vstat_[j] = kAtLower;
    x_[j] = lb;
  } else if (vstat_[j] == kAtLower) {
    if (lb == -kInf) {
      vstat_[j] = ub < kInf ? kAtUpper : kFree;
      x_[j] = ub < kInf ? ub : 0.0;
    } else {
      x_[j] = lb;
    }
  } else if (vstat_[j] == kAtUpper) {
    if (ub == kInf) {
      vstat_[j] = lb > -kInf ? kAtLower : kFree;
      x_[j] = lb > -kInf ? lb : 0.0;
    } else {
      x_[j] = ub;
    }
  }
}

void Simplex::reset_basis() {
  const int total = p_->total();
  vstat_.assign(total, kAtLower);
  x_.assign(total, 0.0);
  for (int j = 0; j < total; ++j) {
    if (lb_[j] > -kInf) {
      vstat_[j] = kAtLower;
      x_[j] = lb_[j];
    } else if (ub_[j] < kInf) {
      vstat_[j] = kAtUpper;
      x_[j] = ub_[j];
    } else {
      vstat_[j] = kFree;
      x_[j] = 0.0;
    }
  }
  basis_.resize(p_->m);
  for (int i = 0; i < p_->m; ++i) {
    basis_[i] = p_->n + i;
    vstat_[p_->n + i] = kBasic;
  }
  factorize();
  compute_basics();
}

void Simplex::load_vstat(const std::vector<signed char>& vstat) {
  if (static_cast<int>(vstat.size()) != p_->total()) {
    reset_basis();
    return;
  }
  int basics = 0;
  for (signed char s : vstat)
    if (s == kBasic) ++basics;
  if (basics != p_->m) {
    reset_basis();
    return;
  }
  vstat_ = vstat;
  basis_.clear();
  for (int j = 0; j < p_->total(); ++j) {
    if (vstat_[j] == kBasic) {
      basis_.push_back(j);
    } else if (lb_[j] == -kInf && ub_[j] == kInf) {
      vstat_[j] = kFree;
      x_[j] = 0.0;
    } else if (vstat_[j] == kAtUpper && ub_[j] < kInf) {
      x_[j] = ub_[j];
    } else {
      vstat_[j] = lb_[j] > -kInf ? kAtLower : kAtUpper;
      x_[j] = lb_[j] > -kInf ? lb_[j] : ub_[j];
    }
  }
  factorize();
  compute_basics();
}

void Simplex::append_eta(const std::vector<double>& alpha, const std::vector<int>& alpha_nz,
                         int row) {
  Eta eta;
  eta.pivot_row = row;
  eta.pivot_val = alpha[row];
  eta.start = static_cast<int>(eta_idx_.size());
  for (int i : alpha_nz) {
    if (i == row || std::abs(alpha[i]) < kDropTol) continue;
    eta_idx_.push_back(i);
    eta_val_.push_back(alpha[i]);
  }
  eta.len = static_cast<int>(eta_idx_.size()) - eta.start;
  etas_.push_back(eta);
}

void Simplex::ftran(std::vector<double>& v) const {
  const int m = p_->m;
  // Unit-lower L, forward over processing positions.
  for (int k = 0; k < m; ++k) {
    const double t = v[lu_row_[k]];
    if (t == 0.0) continue;
    for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) v[l_idx_[q]] -= l_val_[q] * t;
  }
  // U, backward; entries reference earlier positions.
  for (int k = m - 1; k >= 0; --k) {
    const int row = lu_row_[k];
    const double t = v[row] / u_diag_[k];
    v[row] = t;
    if (t == 0.0) continue;
    for (int q = u_start_[k]; q < u_start_[k + 1]; ++q) v[lu_row_[u_idx_[q]]] -= u_val_[q] * t;
  }
  // Product-form update etas, oldest first.
  for (const Eta& e : etas_) {
    const double piv = v[e.pivot_row];
    if (piv == 0.0) continue;
    const double theta = piv / e.pivot_val;
    for (int k = 0; k < e.len; ++k) v[eta_idx_[e.start + k]] -= eta_val_[e.start + k] * theta;
    v[e.pivot_row] = theta;
  }
}

void Simplex::btran(std::vector<double>& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const Eta& e = *it;
    double dot = 0.0;
    for (int k = 0; k < e.len; ++k) dot += eta_val_[e.start + k] * v[eta_idx_[e.start + k]];
    v[e.pivot_row] = (v[e.pivot_row] - dot) / e.pivot_val;
  }
  const int m = p_->m;
  // U^T, forward over positions.
  for (int k = 0; k < m; ++k) {
    double dot = 0.0;
    for (int q = u_start_[k]; q < u_start_[k + 1]; ++q)
      dot += u_val_[q] * v[lu_row_[u_idx_[q]]];
    v[lu_row_[k]] = (v[lu_row_[k]] - dot) / u_diag_[k];
  }
  // L^T, backward.
  for (int k = m - 1; k >= 0; --k) {
    double dot = 0.0;
    for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) dot += l_val_[q] * v[l_idx_[q]];
    v[lu_row_[k]] -= dot;
  }
}

void Simplex::ftran_sparse(std::vector<double>& v, std::vector<int>& pattern) const {
  const int m = p_->m;
  const size_t cutoff = static_cast<size_t>(m / 8) + 8;
  // L forward: reachability over L columns from the nonzero rows; fall back
  // to plain sweeps once the closure stops being sparse.
  ++lu_epoch_;
  bool dense = false;
  for (int r : pattern) lu_stamp_[r] = lu_epoch_;
  for (size_t i = 0; i < pattern.size(); ++i) {
    const int p0 = lu_pos_[pattern[i]];
    for (int q = l_start_[p0]; q < l_start_[p0 + 1]; ++q)
      if (lu_stamp_[l_idx_[q]] != lu_epoch_) {
        lu_stamp_[l_idx_[q]] = lu_epoch_;
        pattern.push_back(l_idx_[q]);
      }
    if (pattern.size() > cutoff) {
      dense = true;
      break;
    }
  }
  if (dense) {
    ftran(v);
    pattern.clear();
    for (int r = 0; r < m; ++r)
      if (v[r] != 0.0) pattern.push_back(r);
    return;
  }
  std::sort(pattern.begin(), pattern.end(),
            [this](int a, int b) { return lu_pos_[a] < lu_pos_[b]; });
  for (int r : pattern) {
    const double t = v[r];
    if (t == 0.0) continue;
    const int p = lu_pos_[r];
    for (int q = l_start_[p]; q < l_start_[p + 1]; ++q) v[l_idx_[q]] -= l_val_[q] * t;
  }
  // U backward: reach parents through the stored columns, sweep descending.
  auto& positions = work_pos_;
  positions.clear();
  ++lu_epoch_;
  for (int r : pattern)
    if (pos_stamp_[lu_pos_[r]] != lu_epoch_) {
      pos_stamp_[lu_pos_[r]] = lu_epoch_;
      positions.push_back(lu_pos_[r]);
    }
  for (size_t i = 0; i < positions.size() && !dense; ++i) {
    const int k = positions[i];
    for (int q = u_start_[k]; q < u_start_[k + 1]; ++q)
      if (pos_stamp_[u_idx_[q]] != lu_epoch_) {
        pos_stamp_[u_idx_[q]] = lu_epoch_;
        positions.push_back(u_idx_[q]);
      }
    if (positions.size() > cutoff) dense = true;
  }
  if (dense) {
    // Finish with a dense backward sweep from the current state.
    for (int k = m - 1; k >= 0; --k) {
      const int row = lu_row_[k];
      const double t = v[row] / u_diag_[k];
      v[row] = t;
      if (t == 0.0) continue;
      for (int q = u_start_[k]; q < u_start_[k + 1]; ++q)
        v[lu_row_[u_idx_[q]]] -= u_val_[q] * t;
    }
    for (const Eta& e : etas_) {
      const double piv = v[e.pivot_row];
      if (piv == 0.0) continue;
      const double theta = piv / e.pivot_val;
      for (int k = 0; k < e.len; ++k) v[eta_idx_[e.start + k]] -= eta_val_[e.start + k] * theta;
      v[e.pivot_row] = theta;
    }
    pattern.clear();
    for (int r = 0; r < m; ++r)
      if (v[r] != 0.0) pattern.push_back(r);
    return;
  }
  std::sort(positions.rbegin(), positions.rend());
  pattern.clear();
  for (int k : positions) {
    const int row = lu_row_[k];
    const double t = v[row] / u_diag_[k];
    v[row] = t;
    pattern.push_back(row);
    if (t == 0.0) continue;
    for (int q = u_start_[k]; q < u_start_[k + 1]; ++q) v[lu_row_[u_idx_[q]]] -= u_val_[q] * t;
  }
  // Update etas extend the pattern as they fire.
  ++lu_epoch_;
  for (int r : pattern) lu_stamp_[r] = lu_epoch_;
  for (const Eta& e : etas_) {
    const double piv = v[e.pivot_row];
    if (piv == 0.0) continue;
    const double theta = piv / e.pivot_val;
    for (int k = 0; k < e.len; ++k) {
      const int r = eta_idx_[e.start + k];
      v[r] -= eta_val_[e.start + k] * theta;
      if (lu_stamp_[r] != lu_epoch_) {
        lu_stamp_[r] = lu_epoch_;
        pattern.push_back(r);
      }
    }
    v[e.pivot_row] = theta;
    if (lu_stamp_[e.pivot_row] != lu_epoch_) {
      lu_stamp_[e.pivot_row] = lu_epoch_;
      pattern.push_back(e.pivot_row);
    }
  }
}

void Simplex::btran_sparse(std::vector<double>& v, std::vector<int>& pattern) const {
  // Transposed update etas, newest first; each can light up its pivot row.
  ++lu_epoch_;
  for (int r : pattern) lu_stamp_[r] = lu_epoch_;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    const Eta& e = *it;
    double dot = 0.0;
    for (int k = 0; k < e.len; ++k) dot += eta_val_[e.start + k] * v[eta_idx_[e.start + k]];
    const double nv = (v[e.pivot_row] - dot) / e.pivot_val;
    if (nv != 0.0 || v[e.pivot_row] != 0.0) {
      v[e.pivot_row] = nv;
      if (lu_stamp_[e.pivot_row] != lu_epoch_) {
        lu_stamp_[e.pivot_row] = lu_epoch_;
        pattern.push_back(e.pivot_row);
      }
    }
  }
  // U^T forward: children reached through the reverse adjacency.
  const int m = p_->m;
  const size_t cutoff = static_cast<size_t>(m / 8) + 8;
  auto& positions = work_pos_;
  positions.clear();
  ++lu_epoch_;
  bool dense = false;
  for (int r : pattern) {
    const int p = lu_pos_[r];
    if (pos_stamp_[p] != lu_epoch_) {
      pos_stamp_[p] = lu_epoch_;
      positions.push_back(p);
    }
  }
  for (size_t i = 0; i < positions.size(); ++i) {
    const int p = positions[i];
    for (int q = u_rev_start_[p]; q < u_rev_start_[p + 1]; ++q)
      if (pos_stamp_[u_rev_idx_[q]] != lu_epoch_) {
        pos_stamp_[u_rev_idx_[q]] = lu_epoch_;
        positions.push_back(u_rev_idx_[q]);
      }
    if (positions.size() > cutoff) {
      dense = true;
      break;
    }
  }
  if (dense) {
    for (int k = 0; k < m; ++k) {
      double dot = 0.0;
      for (int q = u_start_[k]; q < u_start_[k + 1]; ++q)
        dot += u_val_[q] * v[lu_row_[u_idx_[q]]];
      v[lu_row_[k]] = (v[lu_row_[k]] - dot) / u_diag_[k];
    }
    for (int k = m - 1; k >= 0; --k) {
      double dot = 0.0;
      for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) dot += l_val_[q] * v[l_idx_[q]];
      v[lu_row_[k]] -= dot;
    }
    pattern.clear();
    for (int r = 0; r < m; ++r)
      if (v[r] != 0.0) pattern.push_back(r);
    return;
  }
  std::sort(positions.begin(), positions.end());
  for (int k : positions) {
    double dot = 0.0;
    for (int q = u_start_[k]; q < u_start_[k + 1]; ++q)
      dot += u_val_[q] * v[lu_row_[u_idx_[q]]];
    v[lu_row_[k]] = (v[lu_row_[k]] - dot) / u_diag_[k];
  }
  // L^T backward: propagate from rows into referencing columns.
  ++lu_epoch_;
  for (size_t i = 0; i < positions.size(); ++i) pos_stamp_[positions[i]] = lu_epoch_;
  for (size_t i = 0; i < positions.size() && !dense; ++i) {
    const int row = lu_row_[positions[i]];
    for (int q = l_rev_start_[row]; q < l_rev_start_[row + 1]; ++q)
      if (pos_stamp_[l_rev_idx_[q]] != lu_epoch_) {
        pos_stamp_[l_rev_idx_[q]] = lu_epoch_;
        positions.push_back(l_rev_idx_[q]);
      }
    if (positions.size() > cutoff) dense = true;
  }
  if (dense) {
    for (int k = m - 1; k >= 0; --k) {
      double dot = 0.0;
      for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) dot += l_val_[q] * v[l_idx_[q]];
      v[lu_row_[k]] -= dot;
    }
    pattern.clear();
    for (int r = 0; r < m; ++r)
      if (v[r] != 0.0) pattern.push_back(r);
    return;
  }
  std::sort(positions.rbegin(), positions.rend());
  pattern.clear();
  for (int k : positions) {
    double dot = 0.0;
    for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) dot += l_val_[q] * v[l_idx_[q]];
    v[lu_row_[k]] -= dot;
    pattern.push_back(lu_row_[k]);
  }
}

// Sparse lower-triangular solve of the partially built L against a basis
// column: symbolic reachability first, then a numeric sweep in position
// order. Results stay scattered in lu_work_ over lu_pattern_.
void Simplex::lu_solve_column(const std::vector<std::pair<int, double>>& col) {
  ++lu_epoch_;
  lu_pattern_.clear();
  for (const auto& [row, val] : col) {
    (void)val;
    if (lu_stamp_[row] == lu_epoch_) continue;
    lu_stack_.clear();
    lu_stack_.push_back(row);
    while (!lu_stack_.empty()) {
      const int r = lu_stack_.back();
      lu_stack_.pop_back();
      if (lu_stamp_[r] == lu_epoch_) continue;
      lu_stamp_[r] = lu_epoch_;
      lu_pattern_.push_back(r);
      const int p = lu_pos_[r];
      if (p >= 0)
        for (int q = l_start_[p]; q < l_start_[p + 1]; ++q)
          if (lu_stamp_[l_idx_[q]] != lu_epoch_) lu_stack_.push_back(l_idx_[q]);
    }
  }
  for (const auto& [row, val] : col) lu_work_[row] += val;
  // Dependencies always point from earlier to later positions.
  std::sort(lu_pattern_.begin(), lu_pattern_.end(), [this](int a, int b) {
    const int pa = lu_pos_[a] < 0 ? INT_MAX : lu_pos_[a];
    const int pb = lu_pos_[b] < 0 ? INT_MAX : lu_pos_[b];
    return pa < pb;
  });
  for (int r : lu_pattern_) {
    const int p = lu_pos_[r];
    if (p < 0) break;  // unpivoted rows sort last
    const double t = lu_work_[r];
    if (t == 0.0) continue;
    for (int q = l_start_[p]; q < l_start_[p + 1]; ++q) lu_work_[l_idx_[q]] -= l_val_[q] * t;
  }
}

void Simplex::factorize() {
  const double t_prof = tick();
  ++g_timer.refactors;
  const int m = p_->m;
  etas_.clear();
  eta_idx_.clear();
  eta_val_.clear();
  lu_row_.clear();
  lu_row_.reserve(m);
  lu_pos_.assign(m, -1);
  l_start_.assign(1, 0);
  l_idx_.clear();
  l_val_.clear();
  u_start_.assign(1, 0);
  u_idx_.clear();
  u_val_.clear();
  u_diag_.clear();
  lu_work_.assign(m, 0.0);
  lu_stamp_.assign(m, 0);
  lu_epoch_ = 0;

  // Processing order over basis positions: peel columns that are singletons
  // on the not-yet-pivoted rows, then the kernel by fill count.
  std::vector<char> row_pivoted(m, 0), scheduled(m, 0);
  std::vector<int> active_cnt(m, 0);
  std::vector<std::vector<int>> row_positions(m);
  for (int j = 0; j < m; ++j)
    for (const auto& [r, val] : p_->cols[basis_[j]]) {
      (void)val;
      ++active_cnt[j];
      row_positions[r].push_back(j);
    }
  std::vector<int> order;
  order.reserve(m);
  std::queue<int> singles;
  for (int j = 0; j < m; ++j)
    if (active_cnt[j] == 1) singles.push(j);
  std::vector<int> by_count(m);
  for (int j = 0; j < m; ++j) by_count[j] = j;
  std::sort(by_count.begin(), by_count.end(),
            [&](int a, int b) { return active_cnt[a] < active_cnt[b]; });
  size_t cursor = 0;
  auto mark_rows = [&](int j) {
    scheduled[j] = 1;
    for (const auto& [r, val] : p_->cols[basis_[j]]) {
      (void)val;
      if (row_pivoted[r]) continue;
      row_pivoted[r] = 1;
      for (int j2 : row_positions[r])
        if (!scheduled[j2] && --active_cnt[j2] == 1) singles.push(j2);
    }
  };
  while (static_cast<int>(order.size()) < m) {
    int pick = -1;
    while (!singles.empty()) {
      const int j = singles.front();
      singles.pop();
      if (!scheduled[j] && active_cnt[j] == 1) {
        pick = j;
        break;
      }
    }
    if (pick < 0) {
      while (cursor < by_count.size() && scheduled[by_count[cursor]]) ++cursor;
      if (cursor == by_count.size()) break;
      pick = by_count[cursor];
    }
    mark_rows(pick);
    order.push_back(pick);
  }

  // The peel marks rows greedily; the actual pivot row choice below is
  // numerical, so reset and reuse the flag array.
  std::fill(row_pivoted.begin(), row_pivoted.end(), 0);

  std::vector<int> source_var;
  source_var.reserve(m);
  for (int j : order) {
    lu_solve_column(p_->cols[basis_[j]]);
    int pivot = -1;
    double best = 0.0;
    for (int r : lu_pattern_)
      if (lu_pos_[r] < 0 && std::abs(lu_work_[r]) > best) {
        best = std::abs(lu_work_[r]);
        pivot = r;
      }
    if (pivot < 0 || best < 1e-10) {
      // Singular column: replace it with the slack of an unpivoted row. A
      // nonbasic such slack always exists (slacks pivot on their own row, so
      // none of the unpivoted rows' slacks sits at a processed position).
      for (int r : lu_pattern_) lu_work_[r] = 0.0;
      int repair_row = -1;
      for (int r = 0; r < m; ++r)
        if (lu_pos_[r] < 0 && vstat_[p_->n + r] != kBasic) {
          repair_row = r;
          break;
        }
      assert(repair_row >= 0);
      const int slack = p_->n + repair_row;
      const int old = basis_[j];
      vstat_[old] = lb_[old] > -kInf ? kAtLower : (ub_[old] < kInf ? kAtUpper : kFree);
      x_[old] = vstat_[old] == kAtLower ? lb_[old]
                                        : (vstat_[old] == kAtUpper ? ub_[old] : 0.0);
      basis_[j] = slack;
      vstat_[slack] = kBasic;
      lu_solve_column(p_->cols[basis_[j]]);
      pivot = -1;
      best = 0.0;
      for (int r : lu_pattern_)
        if (lu_pos_[r] < 0 && std::abs(lu_work_[r]) > best) {
          best = std::abs(lu_work_[r]);
          pivot = r;
        }
      assert(pivot >= 0 && best > 0.0);
    }
    const int k = static_cast<int>(lu_row_.size());
    const double diag = lu_work_[pivot];
    u_diag_.push_back(diag);
    for (int r : lu_pattern_) {
      const double val = lu_work_[r];
      lu_work_[r] = 0.0;
      if (r == pivot || std::abs(val) < kDropTol) continue;
      if (lu_pos_[r] >= 0) {
        u_idx_.push_back(lu_pos_[r]);
        u_val_.push_back(val);
      } else {
        l_idx_.push_back(r);
        l_val_.push_back(val / diag);
      }
    }
    u_start_.push_back(static_cast<int>(u_idx_.size()));
    l_start_.push_back(static_cast<int>(l_idx_.size()));
    lu_pos_[pivot] = k;
    lu_row_.push_back(pivot);
    source_var.push_back(basis_[j]);
  }

  // Re-permute so that basis position == pivot row.
  std::vector<int> new_basis(m);
  for (int k = 0; k < m; ++k) new_basis[lu_row_[k]] = source_var[k];
  basis_ = new_basis;

  // Reverse adjacencies for the transposed sparse solves.
  u_rev_start_.assign(m + 1, 0);
  for (int idx : u_idx_) ++u_rev_start_[idx + 1];
  for (int k = 0; k < m; ++k) u_rev_start_[k + 1] += u_rev_start_[k];
  u_rev_idx_.assign(u_idx_.size(), 0);
  {
    std::vector<int> cursor(u_rev_start_.begin(), u_rev_start_.end() - 1);
    for (int k = 0; k < m; ++k)
      for (int q = u_start_[k]; q < u_start_[k + 1]; ++q) u_rev_idx_[cursor[u_idx_[q]]++] = k;
  }
  l_rev_start_.assign(m + 1, 0);
  for (int idx : l_idx_) ++l_rev_start_[idx + 1];
  for (int r = 0; r < m; ++r) l_rev_start_[r + 1] += l_rev_start_[r];
  l_rev_idx_.assign(l_idx_.size(), 0);
  {
    std::vector<int> cursor(l_rev_start_.begin(), l_rev_start_.end() - 1);
    for (int k = 0; k < m; ++k)
      for (int q = l_start_[k]; q < l_start_[k + 1]; ++q) l_rev_idx_[cursor[l_idx_[q]]++] = k;
  }
  pos_stamp_.assign(m, 0);
  g_timer.factor += tick() - t_prof;
}

void Simplex::compute_basics() {
  std::vector<double>& r = work_r_;
  r.assign(p_->m, 0.0);
  for (int i = 0; i < p_->m; ++i) r[i] = p_->rhs[i];
  for (int j = 0; j < p_->total(); ++j) {
    if (vstat_[j] == kBasic || x_[j] == 0.0) continue;
    for (const auto& [row, val] : p_->cols[j]) r[row] -= val * x_[j];
  }
  ftran(r);
  for (int i = 0; i < p_->m; ++i) x_[basis_[i]] = r[i];
}

double Simplex::infeasibility() const {
  double worst = 0.0;
  for (int i = 0; i < p_->m; ++i) {
    const int j = basis_[i];
    if (x_[j] < lb_[j]) worst = std::max(worst, lb_[j] - x_[j]);
    if (x_[j] > ub_[j]) worst = std::max(worst, x_[j] - ub_[j]);
  }
  return worst;
}

double Simplex::objective() const {
  double obj = p_->obj_constant;
  for (int j = 0; j < p_->total(); ++j)
    if (p_->cost[j] != 0.0 && x_[j] != 0.0) obj += p_->cost[j] * x_[j];
  return obj;
}

// Picks the entering variable. dir = +1 to increase, -1 to decrease.
bool Simplex::price(bool phase1, const std::vector<double>& y, bool bland, int& q,
                    int& dir) const {
  const int total = p_->total();
  double best = 0.0;
  q = -1;
  for (int j = 0; j < total; ++j) {
    const signed char s = vstat_[j];
    if (s == kBasic || lb_[j] == ub_[j]) continue;
    double d = phase1 ? 0.0 : p_->cost[j];
    for (const auto& [row, val] : p_->cols[j]) d -= val * y[row];
    int candidate_dir = 0;
    if (s == kAtLower && d < -kDualTol)
      candidate_dir = 1;
    else if (s == kAtUpper && d > kDualTol)
      candidate_dir = -1;
    else if (s == kFree && std::abs(d) > kDualTol)
      candidate_dir = d < 0 ? 1 : -1;
    if (candidate_dir == 0) continue;
    if (bland) {
      q = j;
      dir = candidate_dir;
      return true;
    }
    const double score = d * d / primal_weights_[j];
    if (score > best) {
      best = score;
      q = j;
      dir = candidate_dir;
    }
  }
  return q >= 0;
}

LpStatus Simplex::run(Clock::time_point deadline) {
  static const bool trace_entry = std::getenv("CLG_SIMPLEX_PROF") != nullptr;
  const std::int64_t entry_iters = iterations_;
  struct ExitLog {
    const Simplex* sx;
    std::int64_t entry;
    bool on;
    ~ExitLog() {
      if (on)
        std::fprintf(stderr, "[primal] pivots=%lld\n",
                     static_cast<long long>(sx->iterations() - entry));
    }
  } exit_log{this, entry_iters, trace_entry};
  const int m = p_->m;
  const std::int64_t iter_cap = 20000 + 50LL * p_->total();
  int updates_since_factor = static_cast<int>(etas_.size());
  int stall = 0;
  bool bland = false;
  int optimality_confirmations = 0;

  // Devex reference weights for pricing.
  primal_weights_.assign(p_->total(), 1.0);

  // Ratio-test degeneracy is endemic on these models; shift every finite
  // bound outward by a deterministic whisker and pull it back exactly once
  // no improving direction remains.
  bool perturbed = false;
  std::vector<double> exact_lb, exact_ub;
  if (perturbed) {
    exact_lb = lb_;
    exact_ub = ub_;
    for (int j = 0; j < p_->total(); ++j) {
      if (lb_[j] == ub_[j]) continue;  // keep fixings sharp
      const double eps = 1e-8 * unit_noise(j, 11);
      if (lb_[j] > -kInf) lb_[j] -= eps * (1.0 + std::abs(lb_[j]));
      if (ub_[j] < kInf) ub_[j] += eps * (1.0 + std::abs(ub_[j]));
      if (vstat_[j] == kAtLower)
        x_[j] = lb_[j];
      else if (vstat_[j] == kAtUpper)
        x_[j] = ub_[j];
    }
    compute_basics();
  }
  auto restore_bounds = [&] {
    lb_ = exact_lb;
    ub_ = exact_ub;
    for (int j = 0; j < p_->total(); ++j) {
      if (vstat_[j] == kAtLower)
        x_[j] = lb_[j];
      else if (vstat_[j] == kAtUpper)
        x_[j] = ub_[j];
    }
    compute_basics();
  };

  std::vector<double>& y = work_y_;
  std::vector<double>& alpha = work_alpha_;
  y.assign(m, 0.0);
  alpha.assign(m, 0.0);
  work_rho_.assign(m, 0.0);
  std::vector<int> alpha_nz, pat_y, pat_alpha, pat_rho;
  alpha_nz.reserve(256);

  for (std::int64_t iter = 0;; ++iter) {
    if (iter > iter_cap) return LpStatus::Error;
    if ((iter & 0xff) == 0 && Clock::now() > deadline) return LpStatus::TimeLimit;
    ++iterations_;
    ++g_timer.iters;
    static const bool trace_run = std::getenv("CLG_SIMPLEX_PROF") != nullptr;
    if (trace_run && (iter & 0xfff) == 0)
      std::fprintf(stderr, "[run] iter=%lld m=%d infeas=%.3g obj=%.6g stall=%d bland=%d etas=%zu\n",
                   static_cast<long long>(iter), m, infeasibility(), objective(), stall,
                   static_cast<int>(bland), etas_.size());
    if (stall > 400) bland = true;

    double t_prof = tick();
    const bool phase1 = infeasibility() > kFeasTol;
    g_timer.infeas += tick() - t_prof;

    // y = B^{-T} c_B with the phase-appropriate cost vector.
    t_prof = tick();
    for (int r : pat_y) y[r] = 0.0;
    pat_y.clear();
    for (int i = 0; i < m; ++i) {
      const int j = basis_[i];
      double cost = 0.0;
      if (phase1) {
        if (x_[j] < lb_[j] - kFeasTol)
          cost = -1.0;
        else if (x_[j] > ub_[j] + kFeasTol)
          cost = 1.0;
      } else {
        cost = p_->cost[j];
      }
      if (cost != 0.0) {
        y[i] = cost;
        pat_y.push_back(i);
      }
    }
    btran_sparse(y, pat_y);
    g_timer.btran += tick() - t_prof;

    t_prof = tick();
    int q = -1, dir = 0;
    const bool found = price(phase1, y, bland, q, dir);
    g_timer.price += tick() - t_prof;
    if (!found) {
      // No improving candidate under the current factorization. Refactorize
      // once to rule out drift before declaring the phase finished.
      if (optimality_confirmations < 2 && updates_since_factor > 0) {
        factorize();
        compute_basics();
        updates_since_factor = 0;
        ++optimality_confirmations;
        continue;
      }
      if (perturbed) {
        // Optimal for the whiskered box: snap back to the exact bounds and
        // clean up (usually a handful of pivots).
        restore_bounds();
        perturbed = false;
        stall = 0;
        bland = false;
        optimality_confirmations = 0;
        continue;
      }
      if (phase1) return LpStatus::Infeasible;
      return LpStatus::Optimal;
    }
    optimality_confirmations = 0;

    // alpha = B^{-1} A_q.
    t_prof = tick();
    for (int r : pat_alpha) alpha[r] = 0.0;
    pat_alpha.clear();
    for (const auto& [row, val] : p_->cols[q]) {
      alpha[row] = val;
      pat_alpha.push_back(row);
    }
    ftran_sparse(alpha, pat_alpha);
    alpha_nz.clear();
    for (int r : pat_alpha)
      if (std::abs(alpha[r]) > 1e-11) alpha_nz.push_back(r);
    std::sort(alpha_nz.begin(), alpha_nz.end());
    g_timer.ftran += tick() - t_prof;
    t_prof = tick();

    // Ratio test. x_q moves by t*dir; basic i moves at rate -dir*alpha_i.
    const double span = ub_[q] - lb_[q];
    double t_best = span;  // entering variable's own bound flip
    int leave_pos = -1;    // -1 = bound flip
    signed char leave_stat = kAtLower;
    double best_pivot = 0.0;
    for (int i : alpha_nz) {
      const int j = basis_[i];
      const double rate = -dir * alpha[i];
      const double v = x_[j];
      double t_i;
      signed char stat;
      if (phase1 && v < lb_[j] - kFeasTol) {
        if (rate <= 0) continue;
        t_i = (lb_[j] - v) / rate;
        stat = kAtLower;
      } else if (phase1 && v > ub_[j] + kFeasTol) {
        if (rate >= 0) continue;
        t_i = (ub_[j] - v) / rate;
        stat = kAtUpper;
      } else if (rate > 0 && ub_[j] < kInf) {
        t_i = std::max(0.0, (ub_[j] - v) / rate);
        stat = kAtUpper;
      } else if (rate < 0 && lb_[j] > -kInf) {
        t_i = std::max(0.0, (lb_[j] - v) / rate);
        stat = kAtLower;
      } else {
        continue;
      }
      bool take = false;
      if (!std::isfinite(t_best)) {
        take = std::isfinite(t_i);
      } else {
        const double tol = 1e-9 * (1.0 + std::abs(t_best));
        if (t_i < t_best - tol)
          take = true;
        else if (t_i <= t_best + tol && leave_pos >= 0)
          take = bland ? basis_[i] < basis_[leave_pos] : std::abs(alpha[i]) > best_pivot;
        else if (t_i < t_best && leave_pos < 0)
          take = true;
      }
      if (take) {
        t_best = t_i;
        leave_pos = i;
        leave_stat = stat;
        best_pivot = std::abs(alpha[i]);
      }
    }

    g_timer.ratio += tick() - t_prof;

    if (t_best == kInf) {
      if (phase1) return LpStatus::Error;  // cannot happen with exact arithmetic
      return LpStatus::Unbounded;
    }

    // Reject a too-small pivot: refactorize and retry, falling back to the
    // bound flip when the column is genuinely degenerate.
    if (leave_pos >= 0 && best_pivot < kPivotTol && updates_since_factor > 0) {
      factorize();
      compute_basics();
      updates_since_factor = 0;
      continue;
    }

    const double t = std::max(0.0, t_best);
    stall = t < 1e-10 ? stall + 1 : 0;

    if (leave_pos < 0) {
      // Bound flip: the entering variable crosses to its opposite bound.
      for (int i : alpha_nz) x_[basis_[i]] -= dir * alpha[i] * t;
      if (vstat_[q] == kAtLower) {
        vstat_[q] = kAtUpper;
        x_[q] = ub_[q];
      } else {
        vstat_[q] = kAtLower;
        x_[q] = lb_[q];
      }
      continue;
    }

    const int leaving = basis_[leave_pos];
    for (int i : alpha_nz) x_[basis_[i]] -= dir * alpha[i] * t;
    x_[q] += dir * t;
    x_[leaving] = leave_stat == kAtLower ? lb_[leaving] : ub_[leaving];
    vstat_[leaving] = leave_stat;
    vstat_[q] = kBasic;
    basis_[leave_pos] = q;
    // Devex update: the pivot row rates every nonbasic column against the
    // entering one.
    {
      const double arq = alpha[leave_pos];
      const double wq = primal_weights_[q];
      std::vector<double>& rho = work_rho_;
      pat_rho.assign(1, leave_pos);
      rho[leave_pos] = 1.0;
      btran_sparse(rho, pat_rho);
      for (int j = 0; j < p_->total(); ++j) {
        if (vstat_[j] == kBasic || lb_[j] == ub_[j]) continue;
        double arj = 0.0;
        for (const auto& [row, val] : p_->cols[j]) arj += val * rho[row];
        if (arj == 0.0) continue;
        const double ratio_sq = (arj / arq) * (arj / arq);
        if (ratio_sq * wq > primal_weights_[j]) primal_weights_[j] = ratio_sq * wq;
      }
      primal_weights_[leaving] = std::max(wq / (arq * arq), 1.0);
      if (primal_weights_[leaving] > 1e8) primal_weights_.assign(p_->total(), 1.0);
      for (int row : pat_rho) rho[row] = 0.0;
      pat_rho.clear();
    }
    append_eta(alpha, alpha_nz, leave_pos);
    const size_t lu_nnz = l_idx_.size() + u_idx_.size() + p_->m;
    if (++updates_since_factor >= kRefactorInterval ||
        eta_idx_.size() > 4 * lu_nnz + 4096) {
      factorize();
      compute_basics();
      updates_since_factor = 0;
    }
  }
}

LpStatus Simplex::run_dual(Clock::time_point deadline) {
  const int m = p_->m;
  const int total = p_->total();
  if (m == 0) return run(deadline);
  const std::int64_t iter_cap = 4000 + 10LL * total;
  static const bool trace_run = std::getenv("CLG_SIMPLEX_PROF") != nullptr;
  const std::int64_t iters_at_entry = iterations_;

  std::vector<double>& d = work_d_;
  std::vector<double>& rho = work_rho_;
  std::vector<double>& alpha = work_alpha_;
  rho.assign(m, 0.0);
  alpha.assign(m, 0.0);
  std::vector<int> pat_rho, pat_alpha;
  std::vector<std::pair<int, double>> row_entries;  // (nonbasic var, alpha_rj)

  // Nonbasic cost whiskers break dual ratio ties without disturbing dual
  // feasibility of the warm basis (a positive shift at a lower bound, a
  // negative one at an upper bound). The primal tail run drops them.
  std::vector<double> cost(p_->cost);
  for (int j = 0; j < total; ++j) {
    if (vstat_[j] == kBasic || lb_[j] == ub_[j]) continue;
    const double eps = 1e-7 * unit_noise(j, 23) * (1.0 + std::abs(cost[j]));
    if (vstat_[j] == kAtLower)
      cost[j] += eps;
    else if (vstat_[j] == kAtUpper)
      cost[j] -= eps;
  }

  // Reduced costs for every nonbasic column.
  auto recompute_duals = [&] {
    std::vector<double> y(m, 0.0);
    for (int i = 0; i < m; ++i) y[i] = cost[basis_[i]];
    btran(y);
    d.assign(total, 0.0);
    for (int j = 0; j < total; ++j) {
      if (vstat_[j] == kBasic) continue;
      double dj = cost[j];
      for (const auto& [row, val] : p_->cols[j]) dj -= val * y[row];
      d[j] = dj;
    }
  };
  recompute_duals();

  // Devex reference weights for the leaving-row choice; most-violated
  // selection zig-zags badly on degenerate load models.
  dual_weights_.assign(m, 1.0);

  int updates_since_factor = static_cast<int>(etas_.size());
  for (std::int64_t iter = 0;; ++iter) {
    if (iter > iter_cap) {
      if (trace_run) std::fprintf(stderr, "[dual] cap hit, primal fallback\n");
      return run(deadline);  // give up, let primal finish
    }
    if ((iter & 0x7f) == 0 && Clock::now() > deadline) return LpStatus::TimeLimit;
    ++iterations_;

    // Leaving variable: largest devex-weighted violation.
    int r = -1;
    double best_score = 0.0;
    bool too_high = false;
    for (int i = 0; i < m; ++i) {
      const int j = basis_[i];
      const double below = lb_[j] - x_[j];
      const double above = x_[j] - ub_[j];
      const double viol = std::max(below, above);
      if (viol <= kFeasTol) continue;
      const double score = viol * viol / dual_weights_[i];
      if (score > best_score) {
        best_score = score;
        r = i;
        too_high = above > below;
      }
    }
    if (r < 0) {
      if (trace_run)
        std::fprintf(stderr, "[dual] feasible after %lld pivots\n",
                     static_cast<long long>(iterations_ - iters_at_entry));
      return run(deadline);  // primal feasible; certify via primal
    }

    // Row r of B^{-1} N.
    for (int row : pat_rho) rho[row] = 0.0;
    pat_rho.assign(1, r);
    rho[r] = 1.0;
    btran_sparse(rho, pat_rho);
    row_entries.clear();
    for (int j = 0; j < total; ++j) {
      if (vstat_[j] == kBasic || lb_[j] == ub_[j]) continue;
      double arj = 0.0;
      for (const auto& [row, val] : p_->cols[j]) arj += val * rho[row];
      if (std::abs(arj) > 1e-11) row_entries.emplace_back(j, arj);
    }

    // Bound-flipping dual ratio test. sigma = +1 when the leaving variable
    // exits at its upper bound, -1 at its lower bound. Breakpoints whose
    // variables have a finite span are flipped outright as long as the
    // leaving variable stays violated; the breakpoint that absorbs the rest
    // enters the basis.
    const double sigma = too_high ? 1.0 : -1.0;
    struct Breakpoint {
      double ratio;
      int var;
      double arj;
    };
    std::vector<Breakpoint> breakpoints;
    for (const auto& [j, arj] : row_entries) {
      const double s = sigma * arj;
      bool eligible = false;
      if (vstat_[j] == kAtLower && s > 1e-9)
        eligible = true;
      else if (vstat_[j] == kAtUpper && s < -1e-9)
        eligible = true;
      else if (vstat_[j] == kFree && std::abs(s) > 1e-9)
        eligible = true;
      if (!eligible) continue;
      breakpoints.push_back({std::max(0.0, d[j] / s), j, arj});
    }
    if (breakpoints.empty()) {
      // Dual unbounded: no entering column can absorb the violation.
      if (updates_since_factor > 0) {
        factorize();
        compute_basics();
        recompute_duals();
        updates_since_factor = 0;
        continue;
      }
      return LpStatus::Infeasible;
    }
    std::sort(breakpoints.begin(), breakpoints.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.ratio < b.ratio; });
    const int leaving = basis_[r];
    const double bound_r = too_high ? ub_[leaving] : lb_[leaving];
    double remaining = std::abs(x_[leaving] - bound_r);
    int q = -1;
    double arq = 0.0;
    std::vector<int> flips;
    for (size_t b = 0; b < breakpoints.size(); ++b) {
      const int j = breakpoints[b].var;
      const double span = ub_[j] - lb_[j];
      const double absorb = std::abs(breakpoints[b].arj) * span;
      // Prefer a stable pivot once flipping stops paying; among the ties at
      // the same ratio the largest |arj| wins via the absorb check order.
      if (span == kInf || absorb >= remaining - 1e-12 || b + 1 == breakpoints.size()) {
        q = j;
        arq = breakpoints[b].arj;
        break;
      }
      flips.push_back(static_cast<int>(b));
      remaining -= absorb;
    }
    if (q < 0) {
      q = breakpoints.back().var;
      arq = breakpoints.back().arj;
      flips.pop_back();
    }
    // Apply the accumulated bound flips with a single combined FTRAN: the
    // basic values shift by B^{-1} (sum of flipped columns times deltas).
    if (!flips.empty()) {
      for (int row : pat_alpha) alpha[row] = 0.0;
      pat_alpha.clear();
      for (int bidx : flips) {
        const int j = breakpoints[bidx].var;
        const double span = ub_[j] - lb_[j];
        const double delta = vstat_[j] == kAtLower ? span : -span;
        for (const auto& [row, val] : p_->cols[j]) {
          if (alpha[row] == 0.0) pat_alpha.push_back(row);
          alpha[row] += delta * val;
        }
        if (vstat_[j] == kAtLower) {
          vstat_[j] = kAtUpper;
          x_[j] = ub_[j];
        } else {
          vstat_[j] = kAtLower;
          x_[j] = lb_[j];
        }
      }
      ftran_sparse(alpha, pat_alpha);
      for (int row : pat_alpha)
        if (alpha[row] != 0.0) x_[basis_[row]] -= alpha[row];
    }

    // Primal step: the leaving variable lands exactly on its violated bound.
    const double t_p = (x_[leaving] - bound_r) / arq;

    for (int row : pat_alpha) alpha[row] = 0.0;
    pat_alpha.clear();
    for (const auto& [row, val] : p_->cols[q]) {
      alpha[row] = val;
      pat_alpha.push_back(row);
    }
    ftran_sparse(alpha, pat_alpha);

    for (int row : pat_alpha)
      if (std::abs(alpha[row]) > 1e-13) x_[basis_[row]] -= t_p * alpha[row];
    x_[q] += t_p;
    x_[leaving] = bound_r;
    vstat_[leaving] = too_high ? kAtUpper : kAtLower;
    vstat_[q] = kBasic;
    basis_[r] = q;

    // Dual update along the pivot row.
    const double theta = d[q] / (sigma * arq);
    for (const auto& [j, arj] : row_entries) d[j] -= theta * sigma * arj;
    d[q] = 0.0;
    d[leaving] = -theta * sigma;

    std::vector<int> alpha_nz;
    for (int row : pat_alpha)
      if (std::abs(alpha[row]) > 1e-11) alpha_nz.push_back(row);
    // Devex update along the entering column.
    {
      const double arr = alpha[r];
      const double wr = std::max(dual_weights_[r] / (arr * arr), 1.0);
      for (int row : alpha_nz) {
        if (row == r) continue;
        const double ratio_sq = (alpha[row] / arr) * (alpha[row] / arr);
        dual_weights_[row] = std::max(dual_weights_[row], ratio_sq * dual_weights_[r]);
      }
      dual_weights_[r] = wr;
      if (dual_weights_[r] > 1e8) dual_weights_.assign(m, 1.0);
    }
    append_eta(alpha, alpha_nz, r);
    const size_t lu_nnz = l_idx_.size() + u_idx_.size() + m;
    if (++updates_since_factor >= kRefactorInterval ||
        eta_idx_.size() > 4 * lu_nnz + 4096) {
      factorize();
      compute_basics();
      recompute_duals();
      updates_since_factor = 0;
    }
  }
}

std::vector<double> Simplex::reduced_costs() {
  std::vector<double> y = row_duals();
  std::vector<double> d(p_->total(), 0.0);
  for (int j = 0; j < p_->total(); ++j) {
    if (vstat_[j] == kBasic) continue;
    double dj = p_->cost[j];
    for (const auto& [row, val] : p_->cols[j]) dj -= val * y[row];
    d[j] = dj;
  }
  return d;
}

std::vector<double> Simplex::row_duals() {
  std::vector<double> y(p_->m, 0.0);
  for (int i = 0; i < p_->m; ++i) y[i] = p_->cost[basis_[i]];
  btran(y);
  return y;
}

SolveOutcome solve_lp(const Model& model, const SolveOptions& options) {
  SolveOutcome out;
  const auto t0 = Clock::now();
  auto deadline = options.time_limit == kInf
                      ? Clock::time_point::max()
                      : t0 + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(options.time_limit));

  // Presolve is skipped when duals are requested so that row indexing stays
  // intact.
  const Model* work = &model;
  Model reduced;
  if (options.use_presolve && !options.want_duals) {
    PresolveResult pre = presolve(model, kFeasTol);
    if (!pre.feasible) {
      out.status = SolveStatus::Infeasible;
      out.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      return out;
    }
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
  LpStatus status = simplex.run(deadline);
  out.lp_iterations = simplex.iterations();
  out.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  const double sign = problem.maximize ? -1.0 : 1.0;
  switch (status) {
    case LpStatus::Optimal: {
      out.status = SolveStatus::Optimal;
      out.objective = sign * simplex.objective();
      out.best_bound = out.objective;
      out.primal.resize(model.num_vars());
      for (int j = 0; j < model.num_vars(); ++j) out.primal[j] = simplex.value(j);
      if (options.want_duals) {
        std::vector<double> y = simplex.row_duals();
        out.duals.resize(model.num_rows());
        for (int i = 0; i < model.num_rows(); ++i) out.duals[i] = sign * y[i];
      }
      break;
    }
    case LpStatus::Infeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case LpStatus::Unbounded:
      out.status = SolveStatus::Unbounded;
      break;
    case LpStatus::TimeLimit:
      out.status = SolveStatus::Error;
      out.message = "LP time limit reached";
      break;
    case LpStatus::Error:
      out.status = SolveStatus::Error;
      out.message = "simplex iteration cap reached";
      break;
  }
  return out;
}

SolveOutcome solve_with_bundled_impl(const Model& model, const SolveOptions& options) {
  SolveOutcome out;
  auto issues = model.check();
  if (!issues.empty()) {
    out.status = SolveStatus::Error;
    out.message = issues.front();
    return out;
  }
  if (model.has_binaries()) return solve_mip(model, options);
  return solve_lp(model, options);
}

}  // namespace clg::milp::internal

namespace clg::milp {

SolveOutcome solve_with_bundled(const Model& model, const SolveOptions& options) {
  return internal::solve_with_bundled_impl(model, options);
}

}  // namespace clg::milp
