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
// Textbook dense big-M tableau simplex with Bland's rule. Deliberately
// simple and slow; it serves as the reference the production solver is
// tested against, and as the serial side of the solver benchmark.

#include <cmath>
#include <vector>

#include "clg/milp.hpp"

namespace clg::milp {

namespace {

constexpr double kTol = 1e-9;

struct StdForm {
  // min c z, A z = b, z >= 0; x_j = shift_j + sum_k map[j][k].second * z_{map[j][k].first}
  std::vector<std::vector<double>> a;
  std::vector<double> b, c;
  std::vector<double> shift;
  std::vector<std::vector<std::pair<int, double>>> expand;
  int cols = 0;
};

}  // namespace

SolveOutcome solve_with_reference(const Model& model, const SolveOptions&) {
  SolveOutcome out;
  if (model.has_binaries()) {
    out.status = SolveStatus::Error;
    out.message = "reference backend solves pure LPs only";
    return out;
  }
  const int n = model.num_vars();
  const int m = model.num_rows();
  const double sign = model.obj_sense() == ObjSense::Maximize ? -1.0 : 1.0;

  StdForm f;
  f.shift.assign(n, 0.0);
  f.expand.assign(n, {});
  std::vector<std::pair<int, double>> ub_rows;  // (z column, span) for finite ranges
  for (int j = 0; j < n; ++j) {
    const auto& v = model.var(j);
    if (v.lb > -kInf) {
      const int z = f.cols++;
      f.shift[j] = v.lb;
      f.expand[j] = {{z, 1.0}};
      if (v.ub < kInf) ub_rows.emplace_back(z, v.ub - v.lb);
    } else if (v.ub < kInf) {
      const int z = f.cols++;
      f.shift[j] = v.ub;
      f.expand[j] = {{z, -1.0}};
    } else {
      const int zp = f.cols++, zn = f.cols++;
      f.expand[j] = {{zp, 1.0}, {zn, -1.0}};
    }
  }

  const int rows_total = m + static_cast<int>(ub_rows.size());
  std::vector<int> slack_col(rows_total, -1);
  for (int i = 0; i < m; ++i)
    if (model.row(i).sense != RowSense::Equal) slack_col[i] = f.cols++;
  for (size_t k = 0; k < ub_rows.size(); ++k) slack_col[m + k] = f.cols++;

  f.a.assign(rows_total, std::vector<double>(f.cols, 0.0));
  f.b.assign(rows_total, 0.0);
  f.c.assign(f.cols, 0.0);
  for (int j = 0; j < n; ++j) {
    const double cj = sign * model.obj()[j];
    for (const auto& [z, w] : f.expand[j]) f.c[z] += cj * w;
  }

  for (int i = 0; i < m; ++i) {
    const auto& row = model.row(i);
    double rhs = row.rhs;
    for (const auto& [v, coef] : row.terms) {
      rhs -= coef * f.shift[v];
      for (const auto& [z, w] : f.expand[v]) f.a[i][z] += coef * w;
    }
    if (row.sense == RowSense::LessEqual) f.a[i][slack_col[i]] = 1.0;
    if (row.sense == RowSense::GreaterEqual) f.a[i][slack_col[i]] = -1.0;
    f.b[i] = rhs;
  }
  for (size_t k = 0; k < ub_rows.size(); ++k) {
    f.a[m + k][ub_rows[k].first] = 1.0;
    f.a[m + k][slack_col[m + k]] = 1.0;
    f.b[m + k] = ub_rows[k].second;
  }

  // Normalize b >= 0 and append one artificial per row (big-M costs).
  double cmax = 1.0;
  for (double cj : f.c) cmax = std::max(cmax, std::abs(cj));
  const double big_m = 1e7 * cmax;
  const int art0 = f.cols;
  for (int i = 0; i < rows_total; ++i) {
    if (f.b[i] < 0) {
      for (double& aij : f.a[i]) aij = -aij;
      f.b[i] = -f.b[i];
    }
  }
  std::vector<int> basis(rows_total);
  for (int i = 0; i < rows_total; ++i) {
    for (auto& r : f.a) r.push_back(0.0);
    f.a[i][art0 + i] = 1.0;
    f.c.push_back(big_m);
    basis[i] = art0 + i;
  }
  const int cols_total = f.cols + rows_total;

  // Reduced-cost row maintained explicitly.
  std::vector<double> red(f.c);
  double obj = 0.0;
  for (int i = 0; i < rows_total; ++i) {
    // Price out the artificial basis.
    for (int j = 0; j < cols_total; ++j) red[j] -= big_m * f.a[i][j];
    obj -= big_m * f.b[i];
  }

  for (std::int64_t iter = 0;; ++iter) {
    if (iter > 200000) {
      out.status = SolveStatus::Error;
      out.message = "reference simplex iteration cap";
      return out;
    }
    int q = -1;
    for (int j = 0; j < cols_total; ++j)
      if (red[j] < -1e-9) {
        q = j;  // Bland: first improving column
        break;
      }
    if (q < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < rows_total; ++i) {
      if (f.a[i][q] > 1e-9) {
        const double ratio = f.b[i] / f.a[i][q];
        if (leave < 0 || ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) {
      bool artificial_active = false;
      for (int i = 0; i < rows_total; ++i)
        if (basis[i] >= art0 && f.b[i] > 1e-7) artificial_active = true;
      out.status = artificial_active ? SolveStatus::Infeasible : SolveStatus::Unbounded;
      return out;
    }
    // Pivot (q enters, row `leave` leaves).
    const double piv = f.a[leave][q];
    for (int j = 0; j < cols_total; ++j) f.a[leave][j] /= piv;
    f.b[leave] /= piv;
    for (int i = 0; i < rows_total; ++i) {
      if (i == leave || f.a[i][q] == 0.0) continue;
      const double factor = f.a[i][q];
      for (int j = 0; j < cols_total; ++j) f.a[i][j] -= factor * f.a[leave][j];
      f.b[i] -= factor * f.b[leave];
    }
    const double rfac = red[q];
    for (int j = 0; j < cols_total; ++j) red[j] -= rfac * f.a[leave][j];
    obj -= rfac * f.b[leave];
    basis[leave] = q;
  }

  for (int i = 0; i < rows_total; ++i)
    if (basis[i] >= art0 && f.b[i] > 1e-6) {
      out.status = SolveStatus::Infeasible;
      return out;
    }

  std::vector<double> z(cols_total, 0.0);
  for (int i = 0; i < rows_total; ++i) z[basis[i]] = f.b[i];
  out.primal.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.primal[j] = f.shift[j];
    for (const auto& [zc, w] : f.expand[j]) out.primal[j] += w * z[zc];
  }
  out.objective = model.obj_constant();
  for (int j = 0; j < n; ++j) out.objective += model.obj()[j] * out.primal[j];
  out.best_bound = out.objective;
  out.status = SolveStatus::Optimal;
  return out;
}

}  // namespace clg::milp
