// Copyright 2026 The scpsd Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference solvers. None of these share code with the library's
// simplex, dispatch builder, or master solver.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowOp { kLe, kEq, kGe };

// A small LP in dense form: min c'x, rows, l <= x <= u.
struct DenseLp {
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<RowOp> op;
  std::vector<double> b;
  std::vector<double> lo;
  std::vector<double> up;
};

struct OracleResult {
  bool feasible = false;
  bool unbounded = false;
  double objective = kInf;
  std::vector<double> x;
};

// Exhaustive vertex enumeration. Requires finite bounds on every variable
// (the feasible set is then a polytope and an optimum sits at a vertex).
inline OracleResult vertex_enumeration(const DenseLp& lp, double tol = 1e-9) {
  const int n = static_cast<int>(lp.c.size());
  std::vector<std::vector<double>> g;  // inequality rows g x <= h
  std::vector<double> h;
  std::vector<std::vector<double>> eq;
  std::vector<double> eqb;
  for (std::size_t r = 0; r < lp.a.size(); ++r) {
    if (lp.op[r] == RowOp::kEq) {
      eq.push_back(lp.a[r]);
      eqb.push_back(lp.b[r]);
    } else {
      std::vector<double> row = lp.a[r];
      double rhs = lp.b[r];
      if (lp.op[r] == RowOp::kGe) {
        for (double& v : row) v = -v;
        rhs = -rhs;
      }
      g.push_back(row);
      h.push_back(rhs);
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    g.push_back(e);
    h.push_back(lp.up[j]);
    e[j] = -1.0;
    g.push_back(e);
    h.push_back(-lp.lo[j]);
  }
  // Equality rows may be linearly dependent, so the number of active
  // inequalities at a vertex ranges from n - |eq| up to n.
  const int ne = static_cast<int>(eq.size());
  OracleResult best;
  const int ng = static_cast<int>(g.size());
  int need = 0;
  std::vector<int> pick;
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == need) {
      Eigen::MatrixXd M(ne + need, n);
      Eigen::VectorXd rhs(ne + need);
      for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < n; ++j) M(i, j) = eq[i][j];
        rhs(i) = eqb[i];
      }
      for (int i = 0; i < need; ++i) {
        for (int j = 0; j < n; ++j) M(ne + i, j) = g[pick[i]][j];
        rhs(ne + i) = h[pick[i]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (lu.rank() < n) return;
      const Eigen::VectorXd x = lu.solve(rhs);
      for (int i = 0; i < ne; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += eq[i][j] * x(j);
        if (std::abs(s - eqb[i]) > tol * (1 + std::abs(eqb[i]))) return;
      }
      for (int i = 0; i < ng; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += g[i][j] * x(j);
        if (s > h[i] + tol * (1 + std::abs(h[i]))) return;
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += lp.c[j] * x(j);
      if (!best.feasible || obj < best.objective) {
        best.feasible = true;
        best.objective = obj;
        best.x.assign(x.data(), x.data() + n);
      }
      return;
    }
    for (int i = start; i <= ng - (need - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  for (need = std::max(0, n - ne); need <= n; ++need) {
    pick.assign(need, 0);
    rec(0, 0);
  }
  return best;
}

// Textbook two-phase full-tableau primal simplex with Bland's rule on the
// standard form min c'z, Mz = q, z >= 0. Requires finite lower bounds.
inline OracleResult tableau_simplex(const DenseLp& lp) {
  const int n = static_cast<int>(lp.c.size());
  // Columns: shifted structurals z_j = x_j - lo_j, then one slack/surplus per
  // inequality row and per finite upper bound.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<int> slack_sign;  // +1 slack, -1 surplus, 0 none
  for (std::size_t r = 0; r < lp.a.size(); ++r) {
    double b = lp.b[r];
    for (int j = 0; j < n; ++j) b -= lp.a[r][j] * lp.lo[j];
    rows.push_back(lp.a[r]);
    rhs.push_back(b);
    slack_sign.push_back(lp.op[r] == RowOp::kLe ? 1 : lp.op[r] == RowOp::kGe ? -1 : 0);
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lp.up[j])) continue;
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back(e);
    rhs.push_back(lp.up[j] - lp.lo[j]);
    slack_sign.push_back(1);
  }
  const int m = static_cast<int>(rows.size());
  int nslack = 0;
  for (int s : slack_sign) nslack += s != 0;
  const int ncol = n + nslack + m;  // structurals, slacks, artificials
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(ncol + 1, 0.0));
  int sc = n;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = rows[i][j];
    if (slack_sign[i] != 0) T[i][sc++] = slack_sign[i];
    T[i][ncol] = rhs[i];
    if (T[i][ncol] < 0) {
      for (double& v : T[i]) v = -v;
    }
    T[i][n + nslack + i] = 1.0;
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + nslack + i;

  auto run = [&](const std::vector<double>& cost, int allowed_cols) -> bool {
    // Objective row: reduced costs.
    std::vector<double>& z = T[m];
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < ncol; ++j) z[j] = cost[j];
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j <= ncol; ++j) z[j] -= cb * T[i][j];
    }
    for (int iter = 0; iter < 100000; ++iter) {
      int q = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (z[j] < -1e-10) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      int r = -1;
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        if (T[i][q] > 1e-10) {
          const double ratio = T[i][ncol] / T[i][q];
          if (ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[r])) {
            best = ratio;
            r = i;
          }
        }
      }
      if (r < 0) return false;  // unbounded
      const double piv = T[r][q];
      for (double& v : T[r]) v /= piv;
      for (int i = 0; i <= m; ++i) {
        if (i == r || T[i][q] == 0.0) continue;
        const double f = T[i][q];
        for (int j = 0; j <= ncol; ++j) T[i][j] -= f * T[r][j];
      }
      basis[r] = q;
    }
    return false;
  };

  OracleResult res;
  std::vector<double> phase1(ncol, 0.0);
  for (int i = 0; i < m; ++i) phase1[n + nslack + i] = 1.0;
  run(phase1, ncol);
  if (-T[m][ncol] > 1e-7) return res;  // infeasible
  // Drive remaining zero-level artificials out where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n + nslack) continue;
    for (int j = 0; j < n + nslack; ++j) {
      if (std::abs(T[i][j]) > 1e-9) {
        const double piv = T[i][j];
        for (double& v : T[i]) v /= piv;
        for (int k = 0; k <= m; ++k) {
          if (k == i || T[k][j] == 0.0) continue;
          const double f = T[k][j];
          for (int c = 0; c <= ncol; ++c) T[k][c] -= f * T[i][c];
        }
        basis[i] = j;
        break;
      }
    }
  }
  std::vector<double> phase2(ncol, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.c[j];
  for (int i = 0; i < m; ++i) phase2[n + nslack + i] = 0.0;
  if (!run(phase2, n + nslack)) {
    res.unbounded = true;
    return res;
  }
  res.feasible = true;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) res.x[basis[i]] = T[i][ncol];
  }
  double obj = 0.0;
  for (int j = 0; j < n; ++j) {
    res.x[j] += lp.lo[j];
    obj += lp.c[j] * res.x[j];
  }
  res.objective = obj;
  return res;
}

}  // namespace oracle
