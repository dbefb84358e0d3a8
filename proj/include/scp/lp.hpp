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

// Bounded-variable revised dual simplex.
//
// The instance is   min c'x   s.t.  A x (<=,=,>=) b,   l <= x <= u.
// Internally every row r gets a slack s_r with A x + s = b and
//   <= rows: s_r in [0, +inf),  >= rows: s_r in (-inf, 0],  = rows: s_r = 0,
// so the all-slack basis is always available. Column bounds are handled
// implicitly (never expanded into rows).
//
// Sign conventions of the returned solution: y = c_B' B^-1, reduced costs
// d = c - A'y. For a minimization, duals of <= rows are <= 0 and duals of
// >= rows are >= 0 at optimality.
//
// Dual feasibility at the start is obtained by placing each nonbasic column at
// the bound matching the sign of its reduced cost; a column lacking that
// bound gets a temporary box of width `artificial_bound`, widened on demand.
// A basis that was optimal for an instance with the same c and A is dual
// feasible for any bounds and right-hand sides, which makes warm starts across
// scenarios free of any phase 1.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scp/error.hpp"

namespace scp::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : std::uint8_t { kLe, kEq, kGe };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit, kNumericalFailure };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
    case Status::kNumericalFailure: return "numerical-failure";
  }
  return "?";
}

enum class VarStatus : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };

using DenseInverse = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Column-compressed LP. Columns may reference rows added later; only the
// final row count matters at solve time.
struct LpInstance {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> col_start{0};
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<Sense> sense;
  std::vector<double> rhs;

  int num_cols() const { return static_cast<int>(cost.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_row(Sense s, double b) {
    sense.push_back(s);
    rhs.push_back(b);
    return num_rows() - 1;
  }

  int add_col(double c, double lo, double up,
              std::span<const std::pair<int, double>> entries = {}) {
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(up);
    for (const auto& [r, v] : entries) {
      if (v == 0.0) continue;
      row_index.push_back(r);
      value.push_back(v);
    }
    col_start.push_back(static_cast<int>(row_index.size()));
    return num_cols() - 1;
  }

  int add_col(double c, double lo, double up,
              std::initializer_list<std::pair<int, double>> entries) {
    return add_col(c, lo, up, std::span<const std::pair<int, double>>(entries.begin(), entries.size()));
  }

  // Row-wise dense view, for small problems and tests.
  std::vector<std::vector<double>> dense_rows() const {
    std::vector<std::vector<double>> a(num_rows(), std::vector<double>(num_cols(), 0.0));
    for (int j = 0; j < num_cols(); ++j) {
      for (int k = col_start[j]; k < col_start[j + 1]; ++k) a[row_index[k]][j] += value[k];
    }
    return a;
  }

  // Throws std::invalid_argument naming the first inconsistency.
  void validate() const {
    const int n = num_cols();
    if (lower.size() != cost.size() || upper.size() != cost.size() ||
        col_start.size() != cost.size() + 1 || sense.size() != rhs.size() ||
        row_index.size() != value.size()) {
      throw std::invalid_argument("lp: inconsistent dimensions");
    }
    for (int j = 0; j < n; ++j) {
      if (std::isnan(cost[j]) || std::isnan(lower[j]) || std::isnan(upper[j]) ||
          !std::isfinite(cost[j])) {
        throw std::invalid_argument("lp: invalid number in column " + std::to_string(j));
      }
      if (lower[j] > upper[j]) {
        throw std::invalid_argument("lp: lower > upper in column " + std::to_string(j));
      }
      if (lower[j] == kInf || upper[j] == -kInf) {
        throw std::invalid_argument("lp: empty bound interval in column " + std::to_string(j));
      }
    }
    for (std::size_t k = 0; k < row_index.size(); ++k) {
      if (row_index[k] < 0 || row_index[k] >= num_rows() || !std::isfinite(value[k])) {
        throw std::invalid_argument("lp: invalid matrix entry " + std::to_string(k));
      }
    }
    for (double b : rhs) {
      if (!std::isfinite(b)) throw std::invalid_argument("lp: non-finite rhs");
    }
  }
};

struct Controls {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double gap_tol = 1e-6;
  double cs_tol = 1e-5;
  double pivot_tol = 1e-9;
  int max_iterations = 1000000;
  int refactor_interval = 200;
  // Degenerate pivots in a row before switching to Bland's rule.
  int degenerate_limit = 50;
  double artificial_bound = 1e7;
  // Export B^-1 with the final basis so later solves can skip factorization.
  bool keep_inverse = true;
};

// Basis description over structurals followed by slacks (size n + m). The
// optional inverse lets a solve with the same matrix skip factorization.
struct Basis {
  std::vector<int> basic;  // basic variable per row position
  std::vector<VarStatus> status;
  std::shared_ptr<const DenseInverse> inverse;
  bool empty() const { return basic.empty(); }
};

struct LpSolution {
  Status status = Status::kNumericalFailure;
  std::vector<double> primal;          // structural values
  std::vector<double> dual;            // one per row
  std::vector<double> reduced_cost;    // one per structural
  double objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  Basis basis;
};

namespace detail {

class DualSimplex {
 public:
  DualSimplex(const LpInstance& lp, const Controls& ctl)
      : lp_(lp), ctl_(ctl), n_(lp.num_cols()), m_(lp.num_rows()), N_(n_ + m_) {
    lo_.resize(N_);
    up_.resize(N_);
    cost_.assign(N_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      up_[j] = lp.upper[j];
      cost_[j] = lp.cost[j];
    }
    for (int r = 0; r < m_; ++r) {
      const int j = n_ + r;
      switch (lp.sense[r]) {
        case Sense::kLe: lo_[j] = 0.0; up_[j] = kInf; break;
        case Sense::kGe: lo_[j] = -kInf; up_[j] = 0.0; break;
        case Sense::kEq: lo_[j] = 0.0; up_[j] = 0.0; break;
      }
    }
    big_ = ctl.artificial_bound;
    for (double b : lp.rhs) big_ = std::max(big_, 1e3 * std::abs(b));
    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[j])) big_ = std::max(big_, 1e3 * std::abs(lo_[j]));
      if (std::isfinite(up_[j])) big_ = std::max(big_, 1e3 * std::abs(up_[j]));
    }
  }

  LpSolution run(const Basis* warm) {
    if (!install_basis(warm)) install_slack_basis();
    bool retried_cold = false;
    int widen = 0;
    while (true) {
      const Status st = iterate();
      if (st == Status::kNumericalFailure && !retried_cold) {
        retried_cold = true;
        install_slack_basis();
        continue;
      }
      if (st == Status::kInfeasible && has_artificial()) {
        if (++widen > 4) return finish(Status::kInfeasible);
        widen_artificials();
        continue;
      }
      if (st != Status::kOptimal) return finish(st);
      // Optimal for the working box; artificial bounds must be inactive.
      int active = resolve_artificials();
      if (active == 0) return finish(Status::kOptimal);
      if (++widen > 4) return finish(Status::kUnbounded);
      widen_artificials();
    }
  }

 private:
  // ---- basis management --------------------------------------------------
  void install_slack_basis() {
    basic_.resize(m_);
    status_.assign(N_, VarStatus::kAtLower);
    pos_.assign(N_, -1);
    for (int r = 0; r < m_; ++r) {
      basic_[r] = n_ + r;
      status_[n_ + r] = VarStatus::kBasic;
      pos_[n_ + r] = r;
    }
    binv_.setIdentity(m_, m_);
    weight_.assign(m_, 1.0);
    prefer_status_.assign(N_, VarStatus::kAtLower);
    since_refactor_ = 0;
    initialize_nonbasics();
  }

  bool install_basis(const Basis* warm) {
    if (warm == nullptr || warm->empty()) return false;
    if (static_cast<int>(warm->basic.size()) != m_ ||
        static_cast<int>(warm->status.size()) != N_) {
      return false;
    }
    basic_ = warm->basic;
    status_ = warm->status;
    pos_.assign(N_, -1);
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (j < 0 || j >= N_ || pos_[j] >= 0) return false;
      pos_[j] = r;
      status_[j] = VarStatus::kBasic;
    }
    for (int j = 0; j < N_; ++j) {
      if (pos_[j] < 0 && status_[j] == VarStatus::kBasic) status_[j] = VarStatus::kAtLower;
    }
    prefer_status_ = status_;
    if (warm->inverse && warm->inverse->rows() == m_ && warm->inverse->cols() == m_) {
      binv_ = *warm->inverse;
      recompute_weights();
    } else if (!refactor()) {
      return false;
    }
    since_refactor_ = 0;
    initialize_nonbasics();
    return true;
  }

  // Recomputes B^-1 from scratch through a sparse LU of B, with a dense
  // partial-pivoting fallback. Returns false if B is singular.
  bool refactor() {
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(2 * m_);
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      if (j >= n_) {
        entries.emplace_back(j - n_, r, 1.0);
      } else {
        for (int k = lp_.col_start[j]; k < lp_.col_start[j + 1]; ++k) {
          entries.emplace_back(lp_.row_index[k], r, lp_.value[k]);
        }
      }
    }
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(B);
    if (lu.info() == Eigen::Success) {
      const Eigen::MatrixXd inv = lu.solve(Eigen::MatrixXd::Identity(m_, m_));
      if (lu.info() == Eigen::Success && inv.allFinite()) {
        const Eigen::MatrixXd check = B * inv - Eigen::MatrixXd::Identity(m_, m_);
        const double inv_norm = inv.cwiseAbs().maxCoeff();
        if (check.cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, inv_norm)) {
          binv_ = inv;
          recompute_weights();
          since_refactor_ = 0;
          return true;
        }
      }
    }
    const Eigen::MatrixXd Bd(B);
    Eigen::PartialPivLU<Eigen::MatrixXd> dense(Bd);
    const auto& U = dense.matrixLU();
    double umax = 0.0, umin = kInf;
    for (int i = 0; i < m_; ++i) {
      umax = std::max(umax, std::abs(U(i, i)));
      umin = std::min(umin, std::abs(U(i, i)));
    }
    if (!(umin > 1e-11 * std::max(1.0, umax))) return false;
    binv_ = dense.inverse();
    recompute_weights();
    since_refactor_ = 0;
    return true;
  }

  double column_dot(int j, const double* vec) const {
    if (j >= n_) return vec[j - n_];
    double s = 0.0;
    for (int k = lp_.col_start[j]; k < lp_.col_start[j + 1]; ++k) {
      s += lp_.value[k] * vec[lp_.row_index[k]];
    }
    return s;
  }

  void compute_duals() {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double cb = cost_[basic_[r]];
      if (cb == 0.0) continue;
      const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
      for (int i = 0; i < m_; ++i) y_[i] += cb * row[i];
    }
    d_.assign(N_, 0.0);
    for (int j = 0; j < N_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      d_[j] = cost_[j] - column_dot(j, y_.data());
    }
  }

  // Places nonbasic columns at dual-feasible bounds, adding artificial boxes
  // where the required bound is infinite, then recomputes basic values.
  void initialize_nonbasics() {
    compute_duals();
    art_lo_.assign(N_, 0);
    art_up_.assign(N_, 0);
    wlo_ = lo_;
    wup_ = up_;
    for (int j = 0; j < N_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      place_nonbasic(j);
    }
    compute_primal();
  }

  void place_nonbasic(int j) {
    const double d = d_[j];
    const double tol = ctl_.opt_tol;
    const bool lo_ok = std::isfinite(lo_[j]);
    const bool up_ok = std::isfinite(up_[j]);
    art_lo_[j] = art_up_[j] = 0;
    wlo_[j] = lo_[j];
    wup_[j] = up_[j];
    if (lo_ok && up_ok && lo_[j] == up_[j]) {
      status_[j] = VarStatus::kAtLower;
      return;
    }
    const bool want_upper = prefer_status_[j] == VarStatus::kAtUpper;
    if (want_upper && up_ok && d <= tol) {
      status_[j] = VarStatus::kAtUpper;
    } else if (lo_ok && d >= -tol) {
      status_[j] = VarStatus::kAtLower;
    } else if (up_ok && d <= tol) {
      status_[j] = VarStatus::kAtUpper;
    } else if (!lo_ok && !up_ok && std::abs(d) <= tol) {
      status_[j] = VarStatus::kFree;
    } else if (d > 0.0) {
      status_[j] = VarStatus::kAtLower;
      art_lo_[j] = 1;
      wlo_[j] = (up_ok ? up_[j] : 0.0) - big_;
    } else {
      status_[j] = VarStatus::kAtUpper;
      art_up_[j] = 1;
      wup_[j] = (lo_ok ? lo_[j] : 0.0) + big_;
    }
  }

  double nonbasic_value(int j) const {
    switch (status_[j]) {
      case VarStatus::kAtLower: return wlo_[j];
      case VarStatus::kAtUpper: return wup_[j];
      default: return 0.0;
    }
  }

  void compute_primal() {
    std::vector<double> resid(lp_.rhs);
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      const double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (int k = lp_.col_start[j]; k < lp_.col_start[j + 1]; ++k) {
        resid[lp_.row_index[k]] -= lp_.value[k] * v;
      }
    }
    for (int r = 0; r < m_; ++r) {
      const int j = n_ + r;
      if (status_[j] != VarStatus::kBasic) resid[r] -= nonbasic_value(j);
    }
    xb_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
      double s = 0.0;
      for (int i = 0; i < m_; ++i) s += row[i] * resid[i];
      xb_[r] = s;
    }
  }

  bool has_artificial() const {
    for (int j = 0; j < N_; ++j) {
      if (status_[j] != VarStatus::kBasic && (art_lo_[j] || art_up_[j])) return true;
    }
    return false;
  }

  void widen_artificials() {
    big_ *= 1e3;
    for (int j = 0; j < N_; ++j) {
      if (art_lo_[j]) wlo_[j] = (std::isfinite(up_[j]) ? up_[j] : 0.0) - big_;
      if (art_up_[j]) wup_[j] = (std::isfinite(lo_[j]) ? lo_[j] : 0.0) + big_;
    }
    compute_primal();
  }

  // At a working optimum: moves artificial-bounded columns with zero reduced
  // cost to a true bound (or zero). Returns the number of artificial bounds
  // that are active with a nonzero reduced cost.
  int resolve_artificials() {
    int active = 0;
    bool moved = false;
    for (int j = 0; j < N_; ++j) {
      if (status_[j] == VarStatus::kBasic || !(art_lo_[j] || art_up_[j])) continue;
      if (std::abs(d_[j]) > ctl_.opt_tol) {
        ++active;
        continue;
      }
      art_lo_[j] = art_up_[j] = 0;
      wlo_[j] = lo_[j];
      wup_[j] = up_[j];
      if (std::isfinite(lo_[j])) {
        status_[j] = VarStatus::kAtLower;
      } else if (std::isfinite(up_[j])) {
        status_[j] = VarStatus::kAtUpper;
      } else {
        status_[j] = VarStatus::kFree;
      }
      moved = true;
    }
    if (moved && active == 0) {
      compute_primal();
      const Status st = iterate();
      if (st != Status::kOptimal) return active + 1;
      return resolve_artificials();
    }
    return active;
  }

  // ---- main loop ------------------------------------------------------
  Status iterate() {
    std::vector<double> alpha(N_, 0.0);
    std::vector<double> w(m_, 0.0);
    std::vector<double> shift(m_, 0.0);
    std::vector<std::pair<double, int>> candidates;
    std::vector<int> flips;
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= ctl_.max_iterations) return Status::kIterationLimit;
      if (since_refactor_ >= ctl_.refactor_interval) {
        if (!refactor()) return Status::kNumericalFailure;
        compute_duals();
        repair_dual_signs();
        compute_primal();
      }

      // Leaving row: largest infeasibility^2 / |row of B^-1|^2 (dual
      // steepest edge with exact weights).
      int r = -1;
      double worst = 0.0;
      for (int i = 0; i < m_; ++i) {
        const int j = basic_[i];
        const double lo = lo_[j], up = up_[j];
        const double scale = 1.0 + std::abs(xb_[i]) * 1e-9;
        double infeas = 0.0;
        if (xb_[i] < lo - ctl_.feas_tol * scale) {
          infeas = lo - xb_[i];
        } else if (xb_[i] > up + ctl_.feas_tol * scale) {
          infeas = xb_[i] - up;
        }
        if (infeas <= 0.0) continue;
        if (bland) {
          if (r < 0 || j < basic_[r]) r = i;
          continue;
        }
        const double score = infeas * infeas / std::max(weight_[i], 1e-12);
        if (score > worst) {
          worst = score;
          r = i;
        }
      }
      if (r < 0) {
        // Verify with values recomputed from the current inverse; fall back
        // to a fresh factorization when the inverse has drifted.
        if (since_refactor_ > 0) {
          compute_primal();
          compute_duals();
          if (!inverse_accurate()) {
            if (!refactor()) return Status::kNumericalFailure;
            compute_duals();
            compute_primal();
          }
          const bool flipped = repair_dual_signs();
          if (flipped) compute_primal();
          if (flipped || any_primal_infeasible()) continue;
        }
        return Status::kOptimal;
      }

      const int leaving = basic_[r];
      const bool to_upper = xb_[r] > up_[leaving];
      const double s = to_upper ? 1.0 : -1.0;
      const double* rho = binv_.data() + static_cast<std::size_t>(r) * m_;

      // Ratio test. Outside Bland mode: bound flipping over boxed columns,
      // then a Harris pass over the remaining breakpoints.
      candidates.clear();
      for (int j = 0; j < N_; ++j) {
        alpha[j] = 0.0;
        if (status_[j] == VarStatus::kBasic) continue;
        if (wlo_[j] == wup_[j]) continue;
        const double a = column_dot(j, rho);
        alpha[j] = a;
        if (!eligible(j, a, s)) continue;
        candidates.push_back({std::abs(d_[j]) / std::abs(a), j});
      }
      if (candidates.empty()) return Status::kInfeasible;
      std::sort(candidates.begin(), candidates.end());
      std::size_t first = 0;
      flips.clear();
      if (!bland) {
        double slope = to_upper ? xb_[r] - up_[leaving] : lo_[leaving] - xb_[r];
        while (first < candidates.size()) {
          const int j = candidates[first].second;
          if (art_lo_[j] || art_up_[j] || !std::isfinite(wlo_[j]) || !std::isfinite(wup_[j])) break;
          const double drop = std::abs(alpha[j]) * (wup_[j] - wlo_[j]);
          if (slope - drop <= 0.0) break;
          slope -= drop;
          flips.push_back(j);
          ++first;
        }
        if (first == candidates.size()) return Status::kInfeasible;
      }
      int q = -1;
      if (bland) {
        double best_ratio = kInf;
        for (const auto& [ratio, j] : candidates) {
          if (q < 0 || ratio < best_ratio || (ratio == best_ratio && j < q)) {
            best_ratio = ratio;
            q = j;
          }
        }
      } else {
        double theta_max = kInf;
        for (std::size_t k = first; k < candidates.size(); ++k) {
          const int j = candidates[k].second;
          theta_max = std::min(theta_max, (std::abs(d_[j]) + ctl_.opt_tol) / std::abs(alpha[j]));
        }
        double best_metric = -1.0;
        for (std::size_t k = first; k < candidates.size(); ++k) {
          if (candidates[k].first > theta_max) break;
          const int j = candidates[k].second;
          if (std::abs(alpha[j]) > best_metric) {
            best_metric = std::abs(alpha[j]);
            q = j;
          }
        }
      }
      if (q < 0) return Status::kInfeasible;
      // Entering column in the current basis.
      std::fill(w.begin(), w.end(), 0.0);
      if (q >= n_) {
        const int c = q - n_;
        for (int i = 0; i < m_; ++i) w[i] = binv_(i, c);
      } else {
        for (int k = lp_.col_start[q]; k < lp_.col_start[q + 1]; ++k) {
          const int c = lp_.row_index[k];
          const double v = lp_.value[k];
          for (int i = 0; i < m_; ++i) w[i] += v * binv_(i, c);
        }
      }
      const double aq = alpha[q];
      if (std::abs(w[r] - aq) > 1e-7 * (1.0 + std::abs(aq)) || std::abs(w[r]) < ctl_.pivot_tol) {
        if (since_refactor_ == 0) return Status::kNumericalFailure;
        if (!refactor()) return Status::kNumericalFailure;
        compute_duals();
        repair_dual_signs();
        compute_primal();
        continue;
      }

      // Bound flips shift the basic values by -B^-1 A_j (new - old).
      if (!flips.empty()) {
        std::fill(shift.begin(), shift.end(), 0.0);
        for (int j : flips) {
          const double before = nonbasic_value(j);
          status_[j] = status_[j] == VarStatus::kAtLower ? VarStatus::kAtUpper : VarStatus::kAtLower;
          const double change = nonbasic_value(j) - before;
          if (j >= n_) {
            shift[j - n_] += change;
          } else {
            for (int k = lp_.col_start[j]; k < lp_.col_start[j + 1]; ++k) {
              shift[lp_.row_index[k]] += lp_.value[k] * change;
            }
          }
        }
        for (int k = 0; k < m_; ++k) {
          if (shift[k] == 0.0) continue;
          const double v = shift[k];
          for (int i = 0; i < m_; ++i) xb_[i] -= binv_(i, k) * v;
        }
      }

      // Primal update.
      const double target = to_upper ? up_[leaving] : lo_[leaving];
      const double delta = (xb_[r] - target) / w[r];
      const double xq = (status_[q] == VarStatus::kBasic ? 0.0 : nonbasic_value(q)) + delta;
      for (int i = 0; i < m_; ++i) {
        if (w[i] != 0.0) xb_[i] -= delta * w[i];
      }
      xb_[r] = xq;

      // Dual update.
      const double theta_d = d_[q] / aq;
      if (std::abs(theta_d) <= 1e-12) {
        if (++degenerate_run > std::max(ctl_.degenerate_limit, m_)) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      for (int j = 0; j < N_; ++j) {
        if (status_[j] == VarStatus::kBasic || alpha[j] == 0.0) continue;
        d_[j] -= theta_d * alpha[j];
      }
      d_[q] = 0.0;
      d_[leaving] = -theta_d;

      // Basis change.
      status_[leaving] = to_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
      wlo_[leaving] = lo_[leaving];
      wup_[leaving] = up_[leaving];
      art_lo_[leaving] = art_up_[leaving] = 0;
      pos_[leaving] = -1;
      status_[q] = VarStatus::kBasic;
      art_lo_[q] = art_up_[q] = 0;
      basic_[r] = q;
      pos_[q] = r;
      clean_dual_signs();
      update_inverse(r, w);
      ++iterations_;
      ++since_refactor_;
    }
  }

  bool eligible(int j, double a, double s) const {
    if (std::abs(a) <= ctl_.pivot_tol) return false;
    switch (status_[j]) {
      case VarStatus::kAtLower: return s * a > 0.0;
      case VarStatus::kAtUpper: return s * a < 0.0;
      case VarStatus::kFree: return true;
      default: return false;
    }
  }

  // Harris steps may leave tiny wrong-signed reduced costs; zero them.
  void clean_dual_signs() {
    for (int j = 0; j < N_; ++j) {
      if (status_[j] == VarStatus::kAtLower && d_[j] < 0.0 && wlo_[j] != wup_[j]) {
        if (d_[j] > -ctl_.opt_tol) d_[j] = 0.0;
      } else if (status_[j] == VarStatus::kAtUpper && d_[j] > 0.0 && wlo_[j] != wup_[j]) {
        if (d_[j] < ctl_.opt_tol) d_[j] = 0.0;
      }
    }
  }

  // After recomputing duals from scratch, moves nonbasic columns whose
  // reduced cost has the wrong sign beyond tolerance. Returns true if any
  // column moved (basic values must then be recomputed).
  bool repair_dual_signs() {
    bool moved = false;
    for (int j = 0; j < N_; ++j) {
      if (status_[j] == VarStatus::kBasic || wlo_[j] == wup_[j]) continue;
      const double d = d_[j];
      const bool bad = (status_[j] == VarStatus::kAtLower && d < -ctl_.opt_tol) ||
                       (status_[j] == VarStatus::kAtUpper && d > ctl_.opt_tol) ||
                       (status_[j] == VarStatus::kFree && std::abs(d) > ctl_.opt_tol);
      if (!bad) continue;
      prefer_status_[j] = VarStatus::kAtLower;
      place_nonbasic(j);
      moved = true;
    }
    return moved;
  }

  // Residuals of B x_B = b - A_N x_N and of c_B = B' y.
  bool inverse_accurate() const {
    std::vector<double> resid(lp_.rhs);
    double scale = 1.0;
    for (double b : lp_.rhs) scale = std::max(scale, std::abs(b));
    for (int j = 0; j < N_; ++j) {
      const double v = status_[j] == VarStatus::kBasic ? xb_[pos_[j]] : nonbasic_value(j);
      if (v == 0.0) continue;
      if (j >= n_) {
        resid[j - n_] -= v;
      } else {
        for (int k = lp_.col_start[j]; k < lp_.col_start[j + 1]; ++k) {
          resid[lp_.row_index[k]] -= lp_.value[k] * v;
        }
      }
    }
    for (double r : resid) {
      if (std::abs(r) > 1e-9 * scale) return false;
    }
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      const double dj = cost_[j] - column_dot(j, y_.data());
      if (std::abs(dj) > 1e-10 * (1.0 + std::abs(cost_[j]))) return false;
    }
    return true;
  }

  bool any_primal_infeasible() const {
    for (int i = 0; i < m_; ++i) {
      const int j = basic_[i];
      const double scale = 1.0 + std::abs(xb_[i]) * 1e-9;
      if (xb_[i] < lo_[j] - ctl_.feas_tol * scale || xb_[i] > up_[j] + ctl_.feas_tol * scale) {
        return true;
      }
    }
    return false;
  }

  void update_inverse(int r, const std::vector<double>& w) {
    const double piv = w[r];
    double* row_r = binv_.data() + static_cast<std::size_t>(r) * m_;
    nonzeros_.clear();
    for (int k = 0; k < m_; ++k) {
      row_r[k] /= piv;
      if (row_r[k] != 0.0) nonzeros_.push_back(k);
    }
    weight_[r] /= piv * piv;
    const bool sparse = 3 * nonzeros_.size() < static_cast<std::size_t>(m_);
    for (int i = 0; i < m_; ++i) {
      if (i == r || w[i] == 0.0) continue;
      const double f = w[i];
      double* row_i = binv_.data() + static_cast<std::size_t>(i) * m_;
      double change = 0.0;
      auto step = [&](int k) {
        const double before = row_i[k];
        row_i[k] -= f * row_r[k];
        change += row_i[k] * row_i[k] - before * before;
      };
      if (sparse) {
        for (int k : nonzeros_) step(k);
      } else {
        for (int k = 0; k < m_; ++k) step(k);
      }
      weight_[i] = std::max(weight_[i] + change, 0.0);
    }
  }

  // Squared row norms of B^-1, the dual steepest-edge reference weights.
  void recompute_weights() {
    weight_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double* row = binv_.data() + static_cast<std::size_t>(i) * m_;
      double norm = 0.0;
      for (int k = 0; k < m_; ++k) norm += row[k] * row[k];
      weight_[i] = norm;
    }
  }

  LpSolution finish(Status st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iterations_;
    std::vector<double> full(N_, 0.0);
    for (int j = 0; j < N_; ++j) {
      if (status_[j] != VarStatus::kBasic) full[j] = nonbasic_value(j);
    }
    for (int r = 0; r < m_; ++r) full[basic_[r]] = xb_[r];
    sol.primal.assign(full.begin(), full.begin() + n_);
    if (st == Status::kOptimal) {
      // Snap nonbasic-at-bound roundoff and clip basic values into bounds.
      for (int j = 0; j < n_; ++j) {
        sol.primal[j] = std::clamp(sol.primal[j], lo_[j], up_[j]);
      }
    }
    compute_duals();
    sol.dual = y_;
    sol.reduced_cost.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      sol.reduced_cost[j] = status_[j] == VarStatus::kBasic ? 0.0 : d_[j];
    }
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += lp_.cost[j] * sol.primal[j];
    sol.objective = obj;
    double dobj = 0.0;
    for (int r = 0; r < m_; ++r) dobj += lp_.rhs[r] * y_[r];
    for (int j = 0; j < N_; ++j) {
      const double d = status_[j] == VarStatus::kBasic ? 0.0 : d_[j];
      if (d > 0.0 && std::isfinite(lo_[j])) dobj += d * lo_[j];
      if (d < 0.0 && std::isfinite(up_[j])) dobj += d * up_[j];
    }
    sol.dual_objective = dobj;
    sol.basis.basic = basic_;
    sol.basis.status = status_;
    if (ctl_.keep_inverse) sol.basis.inverse = std::make_shared<const DenseInverse>(binv_);
    return sol;
  }

  const LpInstance& lp_;
  const Controls& ctl_;
  const int n_, m_, N_;
  std::vector<double> lo_, up_, cost_;
  std::vector<double> wlo_, wup_;
  std::vector<char> art_lo_, art_up_;
  std::vector<int> basic_, pos_;
  std::vector<VarStatus> status_, prefer_status_;
  DenseInverse binv_;
  std::vector<double> xb_, y_, d_;
  std::vector<int> nonzeros_;
  std::vector<double> weight_;
  double big_ = 1e7;
  int iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace detail

// Solves `lp`. `warm` may carry a basis (and optionally its inverse) from a
// previous solve of an instance with the same matrix; an unusable warm basis
// silently falls back to the slack basis. Deterministic for identical input.
inline LpSolution solve_lp(const LpInstance& lp, const Controls& controls = {},
                           const Basis* warm = nullptr) {
  lp.validate();
  detail::DualSimplex solver(lp, controls);
  return solver.run(warm);
}

// Writes the instance in CPLEX LP text format, for cross-checking with
// external solvers.
inline void write_lp_format(const LpInstance& lp, std::ostream& out) {
  auto name = [](int j) { return "x" + std::to_string(j); };
  auto term = [&](double v, const std::string& var, bool first) {
    std::string s;
    if (v < 0) s += first ? "-" : " - ";
    else s += first ? "" : " + ";
    s += std::to_string(std::abs(v)) + " " + var;
    return s;
  };
  out << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (lp.cost[j] == 0.0) continue;
    out << " " << term(lp.cost[j], name(j), first);
    first = false;
  }
  if (first) out << " 0 x0";
  out << "\nSubject To\n";
  const auto rows = lp.dense_rows();
  for (int r = 0; r < lp.num_rows(); ++r) {
    out << " c" << r << ":";
    bool f = true;
    for (int j = 0; j < lp.num_cols(); ++j) {
      if (rows[r][j] == 0.0) continue;
      out << " " << term(rows[r][j], name(j), f);
      f = false;
    }
    if (f) out << " 0 x0";
    const char* op = lp.sense[r] == Sense::kLe ? "<=" : lp.sense[r] == Sense::kGe ? ">=" : "=";
    out << " " << op << " " << lp.rhs[r] << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_cols(); ++j) {
    const double lo = lp.lower[j], up = lp.upper[j];
    out << " ";
    if (std::isfinite(lo)) out << lo; else out << "-inf";
    out << " <= " << name(j) << " <= ";
    if (std::isfinite(up)) out << up; else out << "+inf";
    out << "\n";
  }
  out << "End\n";
}

}  // namespace scp::lp
