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

// Proximal master problem in epigraph form:
//
//   min  c'x + w eta + (rho/2) |x - xbar|^2
//   s.t. eta >= alpha_j + beta_j'x   for every cut j
//        0 <= x <= u,  A x <= b
//
// solved by a primal active-set method started from (xbar, max cut at xbar).
// The stationarity row for eta reads w = sum of cut multipliers, so at least
// one cut is always in the working set and the KKT matrix stays nonsingular.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "scp/error.hpp"

namespace scp {

struct AffineCut {
  double alpha = 0.0;
  std::vector<double> beta;
  double value(std::span<const double> x) const {
    double v = alpha;
    for (std::size_t i = 0; i < beta.size(); ++i) v += beta[i] * x[i];
    return v;
  }
};

struct MasterProblem {
  std::vector<double> cost;   // c (per MW over the horizon)
  double eta_weight = 1.0;    // w, the VOLL scaling of the cut model
  double rho = 1.0;
  std::vector<double> center;  // xbar, must be feasible
  std::vector<double> upper;   // u
  std::vector<std::vector<double>> rows;  // A
  std::vector<double> rhs;                // b
  std::vector<AffineCut> cuts;
};

struct MasterSolution {
  std::vector<double> x;
  double eta = 0.0;
  double objective = 0.0;            // c'x + w eta + (rho/2)|x - xbar|^2
  std::vector<double> cut_multipliers;
  std::vector<double> lower_multipliers;
  std::vector<double> upper_multipliers;
  std::vector<double> row_multipliers;
  int iterations = 0;
};

namespace detail {

// Constraint i in the form a'z >= b over z = (x, eta).
struct MasterRows {
  int n = 0;
  int ncuts = 0;
  int nrows = 0;
  const MasterProblem* p = nullptr;

  int size() const { return ncuts + 2 * n + nrows; }

  // a'z
  double dot(int i, const Eigen::VectorXd& z) const {
    if (i < ncuts) {
      const auto& c = p->cuts[i];
      double v = z(n);
      for (int k = 0; k < n; ++k) v -= c.beta[k] * z(k);
      return v;
    }
    i -= ncuts;
    if (i < n) return z(i);
    i -= n;
    if (i < n) return -z(i);
    i -= n;
    double v = 0.0;
    for (int k = 0; k < n; ++k) v -= p->rows[i][k] * z(k);
    return v;
  }

  double bound(int i) const {
    if (i < ncuts) return p->cuts[i].alpha;
    i -= ncuts;
    if (i < n) return 0.0;
    i -= n;
    if (i < n) return -p->upper[i];
    return -p->rhs[i - n];
  }

  void fill(int i, Eigen::Ref<Eigen::VectorXd> a) const {
    a.setZero();
    if (i < ncuts) {
      for (int k = 0; k < n; ++k) a(k) = -p->cuts[i].beta[k];
      a(n) = 1.0;
      return;
    }
    i -= ncuts;
    if (i < n) {
      a(i) = 1.0;
      return;
    }
    i -= n;
    if (i < n) {
      a(i) = -1.0;
      return;
    }
    i -= n;
    for (int k = 0; k < n; ++k) a(k) = -p->rows[i][k];
  }
};

}  // namespace detail

inline MasterSolution solve_master(const MasterProblem& prob, double tol = 1e-9,
                                   int max_iterations = 100000) {
  const int n = static_cast<int>(prob.center.size());
  if (prob.cuts.empty()) throw std::invalid_argument("master: at least one cut is required");
  if (!(prob.rho > 0.0)) throw std::invalid_argument("master: rho must be positive");
  if (static_cast<int>(prob.cost.size()) != n || static_cast<int>(prob.upper.size()) != n) {
    throw std::invalid_argument("master: dimension mismatch");
  }
  for (const auto& c : prob.cuts) {
    if (static_cast<int>(c.beta.size()) != n) {
      throw std::invalid_argument("master: cut dimension mismatch");
    }
  }
  detail::MasterRows rows{n, static_cast<int>(prob.cuts.size()),
                          static_cast<int>(prob.rows.size()), &prob};
  const int nz = n + 1;
  const int ncons = rows.size();

  // Feasibility of the center.
  Eigen::VectorXd z(nz);
  for (int k = 0; k < n; ++k) z(k) = prob.center[k];
  double scale = 1.0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(prob.upper[k]));
  for (int i = rows.ncuts; i < ncons; ++i) {
    if (rows.dot(i, z) < rows.bound(i) - 1e-9 * scale) {
      throw ValidationError("master", "proximal center lies outside the feasible capacity set");
    }
  }
  int first_cut = 0;
  double eta = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < rows.ncuts; ++j) {
    const double v = prob.cuts[j].value(prob.center);
    if (v > eta) {
      eta = v;
      first_cut = j;
    }
  }
  z(n) = eta;

  Eigen::VectorXd q(nz);
  for (int k = 0; k < n; ++k) q(k) = prob.cost[k] - prob.rho * prob.center[k];
  q(n) = prob.eta_weight;

  std::vector<int> work{first_cut};
  std::vector<char> in_work(ncons, 0);
  in_work[first_cut] = 1;
  Eigen::VectorXd a(nz);
  Eigen::VectorXd lambda;
  MasterSolution sol;
  double gscale = 1.0;
  for (int k = 0; k < nz; ++k) gscale = std::max(gscale, std::abs(q(k)));

  for (int iter = 0; iter < max_iterations; ++iter) {
    sol.iterations = iter + 1;
    const int w = static_cast<int>(work.size());
    // KKT: [H  -A_W'; A_W  0] [p; lambda] = [-g; 0], g = H z + q.
    Eigen::VectorXd g = q;
    for (int k = 0; k < n; ++k) g(k) += prob.rho * z(k);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nz + w, nz + w);
    for (int k = 0; k < n; ++k) K(k, k) = prob.rho;
    for (int c = 0; c < w; ++c) {
      rows.fill(work[c], a);
      K.block(0, nz + c, nz, 1) = -a;
      K.block(nz + c, 0, 1, nz) = a.transpose();
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nz + w);
    rhs.head(nz) = -g;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (lu.rank() < nz + w) {
      // Dependent working set: drop the newest constraint and retry.
      if (w <= 1) throw NumericalError("master: singular KKT system");
      in_work[work.back()] = 0;
      work.pop_back();
      continue;
    }
    const Eigen::VectorXd sol_kkt = lu.solve(rhs);
    const Eigen::VectorXd p = sol_kkt.head(nz);
    lambda = sol_kkt.tail(w);

    double pnorm = p.cwiseAbs().maxCoeff();
    double znorm = std::max(1.0, z.cwiseAbs().maxCoeff());
    if (pnorm <= 1e-12 * znorm) {
      int drop = -1;
      double most_negative = -tol * gscale;
      for (int c = 0; c < w; ++c) {
        if (lambda(c) < most_negative) {
          most_negative = lambda(c);
          drop = c;
        }
      }
      if (drop < 0) break;
      in_work[work[drop]] = 0;
      work.erase(work.begin() + drop);
      continue;
    }
    double step = 1.0;
    int blocking = -1;
    for (int i = 0; i < ncons; ++i) {
      if (in_work[i]) continue;
      rows.fill(i, a);
      const double ap = a.dot(p);
      if (ap >= -1e-14 * (1.0 + a.cwiseAbs().maxCoeff()) * pnorm) continue;
      const double slack = rows.dot(i, z) - rows.bound(i);
      const double s = std::max(0.0, slack) / -ap;
      if (s < step) {
        step = s;
        blocking = i;
      }
    }
    z += step * p;
    if (blocking >= 0) {
      work.push_back(blocking);
      in_work[blocking] = 1;
    }
  }

  sol.x.resize(n);
  for (int k = 0; k < n; ++k) {
    sol.x[k] = std::clamp(z(k), 0.0, prob.upper[k]);
  }
  double eta_final = -std::numeric_limits<double>::infinity();
  for (const auto& c : prob.cuts) eta_final = std::max(eta_final, c.value(sol.x));
  sol.eta = eta_final;
  sol.cut_multipliers.assign(rows.ncuts, 0.0);
  sol.lower_multipliers.assign(n, 0.0);
  sol.upper_multipliers.assign(n, 0.0);
  sol.row_multipliers.assign(rows.nrows, 0.0);
  for (std::size_t c = 0; c < work.size(); ++c) {
    int i = work[c];
    const double l = c < static_cast<std::size_t>(lambda.size()) ? lambda(c) : 0.0;
    if (i < rows.ncuts) {
      sol.cut_multipliers[i] = l;
      continue;
    }
    i -= rows.ncuts;
    if (i < n) {
      sol.lower_multipliers[i] = l;
      continue;
    }
    i -= n;
    if (i < n) {
      sol.upper_multipliers[i] = l;
      continue;
    }
    sol.row_multipliers[i - n] = l;
  }
  double obj = prob.eta_weight * sol.eta;
  for (int k = 0; k < n; ++k) {
    const double d = sol.x[k] - prob.center[k];
    obj += prob.cost[k] * sol.x[k] + 0.5 * prob.rho * d * d;
  }
  sol.objective = obj;
  return sol;
}

// Largest violation among stationarity, primal feasibility, multiplier signs
// and complementarity, each scaled by the magnitude of its terms.
inline double master_kkt_residual(const MasterProblem& prob, const MasterSolution& sol) {
  const int n = static_cast<int>(prob.center.size());
  double worst = 0.0;
  double gscale = std::max(1.0, prob.eta_weight);
  for (int k = 0; k < n; ++k) gscale = std::max(gscale, std::abs(prob.cost[k]));
  std::vector<double> grad(n);
  for (int k = 0; k < n; ++k) {
    grad[k] = prob.cost[k] + prob.rho * (sol.x[k] - prob.center[k]);
  }
  double eta_grad = prob.eta_weight;
  for (std::size_t j = 0; j < prob.cuts.size(); ++j) {
    const double l = sol.cut_multipliers[j];
    worst = std::max(worst, -l / gscale);
    eta_grad -= l;
    for (int k = 0; k < n; ++k) grad[k] += l * prob.cuts[j].beta[k];
    const double slack = sol.eta - prob.cuts[j].value(sol.x);
    worst = std::max(worst, -slack / (1.0 + std::abs(sol.eta)));
    worst = std::max(worst, std::abs(l) * slack / (gscale * (1.0 + std::abs(sol.eta))));
  }
  for (int k = 0; k < n; ++k) {
    grad[k] -= sol.lower_multipliers[k];
    grad[k] += sol.upper_multipliers[k];
    worst = std::max(worst, -sol.lower_multipliers[k] / gscale);
    worst = std::max(worst, -sol.upper_multipliers[k] / gscale);
    const double xs = 1.0 + prob.upper[k];
    worst = std::max(worst, sol.lower_multipliers[k] * sol.x[k] / (gscale * xs));
    worst = std::max(worst, sol.upper_multipliers[k] * (prob.upper[k] - sol.x[k]) / (gscale * xs));
  }
  for (std::size_t r = 0; r < prob.rows.size(); ++r) {
    const double l = sol.row_multipliers[r];
    double lhs = 0.0;
    for (int k = 0; k < n; ++k) {
      lhs += prob.rows[r][k] * sol.x[k];
      grad[k] += l * prob.rows[r][k];
    }
    const double slack = prob.rhs[r] - lhs;
    const double rs = 1.0 + std::abs(prob.rhs[r]);
    worst = std::max(worst, -slack / rs);
    worst = std::max(worst, -l / gscale);
    worst = std::max(worst, std::abs(l) * slack / (gscale * rs));
  }
  for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(grad[k]) / gscale);
  worst = std::max(worst, std::abs(eta_grad) / gscale);
  return worst;
}

}  // namespace scp
