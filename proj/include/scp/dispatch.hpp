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

// Second-stage load-shedding LP for a fixed capacity vector and scenario, and
// the conversion of its row duals into affine lower bounds in x.
//
// Columns, in order (T hours, G/R/S units per class):
//   LS_t                          t < T          [0, inf)      cost 1
//   p_{g,t}                       g < G, t < T   [0, A x_g]
//   p_{r,t}                       r < R, t < T   [0, A cf x_r]
//   per storage s: p+_{s,t} (t<T), p-_{s,t} (t<T), e_{s,t} (t<=T)
//     p+, p- in [0, A x_s]; e_{s,0} fixed at f0 H x_s; e_{s,t>0} in [0, H x_s]
// Rows, in order:
//   balance   t < T:        LS_t + sum p_g + sum p_r + sum (p- - p+) = xi_L L_t
//   dynamics  (s, t < T):   e_{t+1} - e_t - eta+ p+_t + p-_t / eta- = 0
//   fuel      per (g, block) with fraction K < 1:  sum_{t in block} p_{g,t} <= K |block| x_g
// The total-generation variable is substituted into the balance row.
//
// A dual vector theta is the vector y of row duals. Bound multipliers follow
// from the reduced costs d = c - W'y, and since W and c never change, every
// y with y_balance <= 1 and y_fuel <= 0 is dual feasible for every (x, xi):
//   U(x, xi) >= xi_L sum_t y_t L_t + sum_j min(0, d_j) u_j(x, xi) + d_e0 e_0(x).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "scp/csv.hpp"
#include "scp/error.hpp"
#include "scp/lp.hpp"
#include "scp/model.hpp"
#include "scp/scenario.hpp"

namespace scp {

struct DispatchOptions {
  // Also emit fuel rows whose fraction is 1 (redundant with the power bounds).
  bool include_redundant_fuel_rows = false;
  lp::Controls lp;
};

enum class FuelPeriod : std::uint8_t { kDay, kWeek, kMonth };

inline const char* to_string(FuelPeriod p) {
  switch (p) {
    case FuelPeriod::kDay: return "day";
    case FuelPeriod::kWeek: return "week";
    case FuelPeriod::kMonth: return "month";
  }
  return "?";
}

struct FuelRow {
  int gen = 0;
  FuelPeriod period = FuelPeriod::kDay;
  HourRange hours;
  double fraction = 1.0;
};

struct DispatchOutcome {
  lp::Status status = lp::Status::kNumericalFailure;
  double unserved = 0.0;             // MWh
  std::vector<double> shed;          // [t]
  std::vector<double> generation;    // [g * T + t]
  std::vector<double> renewable;     // [r * T + t]
  std::vector<double> charge;        // [s * T + t]
  std::vector<double> discharge;     // [s * T + t]
  std::vector<double> soc;           // [s * (T + 1) + t]
  std::vector<double> dual;          // one per row, canonical order
  std::vector<double> day_shed;      // [d]
  int binding_fuel_rows = 0;         // fuel rows with nonzero dual
  int iterations = 0;
  lp::Basis basis;
};

// Compact, scenario-independent form of a dual vector.
//   b_i(xi) = fixed[i] + sum over entries of unit i: q * A_{i,t} (* cf_{i,t})
//   a(xi)   = xi_L * load_coef
struct DualForm {
  struct Entry {
    int unit;
    int t;
    double q;  // <= 0
  };
  double load_coef = 0.0;
  std::vector<double> fixed;  // per unit
  std::vector<Entry> entries;  // grouped by unit, hours ascending
  std::vector<double> y;       // projected row duals
};

struct CutCoefficients {
  double a = 0.0;
  std::vector<double> b;
  std::int64_t dual_id = -1;
  std::int64_t scenario_id = -1;

  double value(std::span<const double> x) const {
    double v = a;
    for (std::size_t i = 0; i < b.size(); ++i) v += b[i] * x[i];
    return v;
  }
};

// Index arithmetic and a reusable LP skeleton for one system.
class DispatchModel {
 public:
  explicit DispatchModel(const SystemModel& sys, DispatchOptions opt = {})
      : sys_(&sys), opt_(std::move(opt)) {
    T_ = sys.horizon();
    G_ = static_cast<int>(sys.conventional.size());
    R_ = static_cast<int>(sys.renewable.size());
    S_ = static_cast<int>(sys.storage.size());
    const Calendar& cal = sys.calendar;
    for (int g = 0; g < G_; ++g) {
      const auto& u = sys.conventional[g];
      auto add = [&](FuelPeriod p, const std::vector<HourRange>& blocks, double k) {
        if (k >= 1.0 && !opt_.include_redundant_fuel_rows) return;
        for (const HourRange& h : blocks) fuel_rows_.push_back({g, p, h, k});
      };
      add(FuelPeriod::kDay, cal.days, u.k_day);
      add(FuelPeriod::kWeek, cal.weeks, u.k_week);
      add(FuelPeriod::kMonth, cal.months, u.k_month);
    }
    build_skeleton();
  }

  const SystemModel& system() const { return *sys_; }
  const DispatchOptions& options() const { return opt_; }
  int horizon() const { return T_; }

  int col_shed(int t) const { return t; }
  int col_gen(int g, int t) const { return T_ + g * T_ + t; }
  int col_ren(int r, int t) const { return T_ * (1 + G_) + r * T_ + t; }
  int col_charge(int s, int t) const { return storage_base(s) + t; }
  int col_discharge(int s, int t) const { return storage_base(s) + T_ + t; }
  int col_soc(int s, int t) const { return storage_base(s) + 2 * T_ + t; }
  int num_cols() const { return T_ * (1 + G_ + R_) + S_ * (3 * T_ + 1); }

  int row_balance(int t) const { return t; }
  int row_dynamics(int s, int t) const { return T_ + s * T_ + t; }
  int row_fuel(int k) const { return T_ + S_ * T_ + k; }
  int num_rows() const { return T_ + S_ * T_ + static_cast<int>(fuel_rows_.size()); }
  const std::vector<FuelRow>& fuel_rows() const { return fuel_rows_; }

  void check_inputs(std::span<const double> x, const Scenario& sc) const {
    if (static_cast<int>(x.size()) != sys_->num_units()) {
      throw std::invalid_argument("dispatch: capacity vector has " +
                                  std::to_string(x.size()) + " entries, expected " +
                                  std::to_string(sys_->num_units()));
    }
    if (sc.horizon != T_ || sc.num_units != sys_->num_units() ||
        sc.num_days != sys_->calendar.num_days()) {
      throw std::invalid_argument("dispatch: scenario dimensions do not match the system");
    }
  }

  // The LP for (x, xi): skeleton plus x- and xi-dependent bounds and rhs.
  lp::LpInstance instance(std::span<const double> x, const Scenario& sc) const {
    check_inputs(x, sc);
    lp::LpInstance lp = skeleton_;
    const SystemModel& sys = *sys_;
    for (int t = 0; t < T_; ++t) lp.rhs[row_balance(t)] = sc.load_factor * sys.load[t];
    for (int g = 0; g < G_; ++g) {
      for (int t = 0; t < T_; ++t) {
        lp.upper[col_gen(g, t)] = sc.up(g, t) ? x[g] : 0.0;
      }
    }
    for (int r = 0; r < R_; ++r) {
      const int i = G_ + r;
      for (int t = 0; t < T_; ++t) {
        lp.upper[col_ren(r, t)] =
            sc.up(i, t) ? capacity_factor(sys, sc, r, t) * x[i] : 0.0;
      }
    }
    for (int s = 0; s < S_; ++s) {
      const int i = G_ + R_ + s;
      const auto& st = sys.storage[s];
      for (int t = 0; t < T_; ++t) {
        const double p = sc.up(i, t) ? x[i] : 0.0;
        lp.upper[col_charge(s, t)] = p;
        lp.upper[col_discharge(s, t)] = p;
      }
      const double emax = st.duration_hours * x[i];
      const double e0 = st.initial_soc_fraction * emax;
      lp.lower[col_soc(s, 0)] = e0;
      lp.upper[col_soc(s, 0)] = e0;
      for (int t = 1; t <= T_; ++t) lp.upper[col_soc(s, t)] = emax;
    }
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
      const FuelRow& f = fuel_rows_[k];
      lp.rhs[row_fuel(static_cast<int>(k))] = f.fraction * f.hours.size() * x[f.gen];
    }
    return lp;
  }

  DispatchOutcome solve(std::span<const double> x, const Scenario& sc,
                        const lp::Basis* warm = nullptr) const {
    const lp::LpInstance lp = instance(x, sc);
    lp::LpSolution sol = lp::solve_lp(lp, opt_.lp, warm);
    if (sol.status != lp::Status::kOptimal && warm != nullptr) {
      sol = lp::solve_lp(lp, opt_.lp, nullptr);
    }
    if (sol.status != lp::Status::kOptimal) {
      throw NumericalError(std::string("dispatch LP ended with status ") +
                           lp::to_string(sol.status) + " for scenario " +
                           std::to_string(sc.seed_id));
    }
    return unpack(sol);
  }

  // Dual form of a row-dual vector. y is first projected onto the dual
  // feasible set (balance duals <= 1, fuel duals <= 0), so the result is a
  // valid lower bound for every (x, xi) even with roundoff in y.
  DualForm dual_form(std::span<const double> y_in) const {
    if (static_cast<int>(y_in.size()) != num_rows()) {
      throw std::invalid_argument("dual vector has " + std::to_string(y_in.size()) +
                                  " entries, the dispatch LP has " +
                                  std::to_string(num_rows()) + " rows");
    }
    const SystemModel& sys = *sys_;
    DualForm f;
    f.y.assign(y_in.begin(), y_in.end());
    for (int t = 0; t < T_; ++t) f.y[row_balance(t)] = std::min(f.y[row_balance(t)], 1.0);
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
      double& v = f.y[row_fuel(static_cast<int>(k))];
      v = std::min(v, 0.0);
    }
    const std::vector<double>& y = f.y;
    f.fixed.assign(sys.num_units(), 0.0);
    for (int t = 0; t < T_; ++t) f.load_coef += y[row_balance(t)] * sys.load[t];

    std::vector<double> fuel_dual(T_);
    for (int g = 0; g < G_; ++g) {
      std::fill(fuel_dual.begin(), fuel_dual.end(), 0.0);
      for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
        const FuelRow& fr = fuel_rows_[k];
        if (fr.gen != g) continue;
        const double yf = y[row_fuel(static_cast<int>(k))];
        if (yf == 0.0) continue;
        f.fixed[g] += yf * fr.fraction * fr.hours.size();
        for (int t = fr.hours.begin; t < fr.hours.end; ++t) fuel_dual[t] += yf;
      }
      for (int t = 0; t < T_; ++t) {
        const double d = -y[row_balance(t)] - fuel_dual[t];
        if (d < 0.0) f.entries.push_back({g, t, d});
      }
    }
    for (int r = 0; r < R_; ++r) {
      for (int t = 0; t < T_; ++t) {
        const double d = -y[row_balance(t)];
        if (d < 0.0) f.entries.push_back({G_ + r, t, d});
      }
    }
    for (int s = 0; s < S_; ++s) {
      const int i = G_ + R_ + s;
      const auto& st = sys.storage[s];
      for (int t = 0; t < T_; ++t) {
        const double yb = y[row_balance(t)];
        const double yd = y[row_dynamics(s, t)];
        const double dc = yb + st.eta_charge * yd;
        const double dd = -yb - yd / st.eta_discharge;
        const double q = std::min(0.0, dc) + std::min(0.0, dd);
        if (q < 0.0) f.entries.push_back({i, t, q});
      }
      auto soc_rc = [&](int t) {
        double d = 0.0;
        if (t < T_) d += y[row_dynamics(s, t)];
        if (t >= 1) d -= y[row_dynamics(s, t - 1)];
        return d;
      };
      double energy = 0.0;
      for (int t = 1; t <= T_; ++t) energy += std::min(0.0, soc_rc(t));
      f.fixed[i] += st.duration_hours * energy +
                    st.initial_soc_fraction * st.duration_hours * soc_rc(0);
    }
    return f;
  }

  // Affine form a + b'x of a dual under scenario xi.
  CutCoefficients affine(const DualForm& f, const Scenario& sc) const {
    CutCoefficients c;
    c.a = sc.load_factor * f.load_coef;
    c.b = f.fixed;
    c.scenario_id = static_cast<std::int64_t>(sc.seed_id);
    for (const auto& e : f.entries) c.b[e.unit] += e.q * availability_scale(sc, e.unit, e.t);
    return c;
  }

  double eval(const DualForm& f, const Scenario& sc, std::span<const double> x) const {
    double v = sc.load_factor * f.load_coef;
    for (std::size_t i = 0; i < f.fixed.size(); ++i) v += f.fixed[i] * x[i];
    for (const auto& e : f.entries) {
      if (x[e.unit] == 0.0) continue;
      v += e.q * availability_scale(sc, e.unit, e.t) * x[e.unit];
    }
    return v;
  }

  // Load shed of a feasible (generally suboptimal) dispatch built greedily;
  // an upper bound on U(x, xi). Zero certifies U = 0.
  double shed_upper_bound(std::span<const double> x, const Scenario& sc) const {
    const SystemModel& sys = *sys_;
    std::vector<double>& net = scratch_net();
    net.resize(T_);
    for (int t = 0; t < T_; ++t) net[t] = sc.load_factor * sys.load[t];
    bool any_limited = false;
    for (int g = 0; g < G_; ++g) {
      if (limited(g)) {
        any_limited = true;
        continue;
      }
      if (x[g] == 0.0) continue;
      const std::uint64_t* w = sc.unit_words(g);
      for (int t = 0; t < T_; ++t) {
        if ((w[t >> 6] >> (t & 63)) & 1u) net[t] -= x[g];
      }
    }
    for (int r = 0; r < R_; ++r) {
      const int i = G_ + r;
      if (x[i] == 0.0) continue;
      for (int t = 0; t < T_; ++t) {
        if (sc.up(i, t)) net[t] -= capacity_factor(sys, sc, r, t) * x[i];
      }
    }
    bool any_deficit = false;
    for (int t = 0; t < T_; ++t) any_deficit |= net[t] > 0.0;
    if (!any_deficit) return 0.0;
    if (!any_limited && S_ == 0) {
      double total = 0.0;
      for (int t = 0; t < T_; ++t) total += std::max(0.0, net[t]);
      return total;
    }
    // Two orders per hour: fuel-limited units before storage, and the reverse.
    const double a = greedy_pass(x, sc, net, true);
    const double b = S_ > 0 && any_limited ? greedy_pass(x, sc, net, false) : a;
    return std::min(a, b);
  }

  // True if a generator has any active fuel fraction.
  bool limited(int g) const {
    const auto& u = sys_->conventional[g];
    return u.k_day < 1.0 || u.k_week < 1.0 || u.k_month < 1.0;
  }

 private:
  int storage_base(int s) const { return T_ * (1 + G_ + R_) + s * (3 * T_ + 1); }

  double availability_scale(const Scenario& sc, int unit, int t) const {
    if (!sc.up(unit, t)) return 0.0;
    if (unit >= G_ && unit < G_ + R_) return capacity_factor(*sys_, sc, unit - G_, t);
    return 1.0;
  }

  void build_skeleton() {
    lp::LpInstance& lp = skeleton_;
    for (int t = 0; t < T_; ++t) lp.add_row(lp::Sense::kEq, 0.0);
    for (int s = 0; s < S_; ++s) {
      for (int t = 0; t < T_; ++t) lp.add_row(lp::Sense::kEq, 0.0);
    }
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) lp.add_row(lp::Sense::kLe, 0.0);

    std::vector<std::vector<int>> fuel_of_gen(G_);
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
      fuel_of_gen[fuel_rows_[k].gen].push_back(static_cast<int>(k));
    }
    std::vector<std::pair<int, double>> col;
    for (int t = 0; t < T_; ++t) lp.add_col(1.0, 0.0, lp::kInf, {{row_balance(t), 1.0}});
    for (int g = 0; g < G_; ++g) {
      for (int t = 0; t < T_; ++t) {
        col.assign(1, {row_balance(t), 1.0});
        for (int k : fuel_of_gen[g]) {
          const HourRange& h = fuel_rows_[k].hours;
          if (t >= h.begin && t < h.end) col.emplace_back(row_fuel(k), 1.0);
        }
        lp.add_col(0.0, 0.0, 0.0, col);
      }
    }
    for (int r = 0; r < R_; ++r) {
      for (int t = 0; t < T_; ++t) lp.add_col(0.0, 0.0, 0.0, {{row_balance(t), 1.0}});
    }
    for (int s = 0; s < S_; ++s) {
      const auto& st = sys_->storage[s];
      for (int t = 0; t < T_; ++t) {
        lp.add_col(0.0, 0.0, 0.0,
                   {{row_balance(t), -1.0}, {row_dynamics(s, t), -st.eta_charge}});
      }
      for (int t = 0; t < T_; ++t) {
        lp.add_col(0.0, 0.0, 0.0,
                   {{row_balance(t), 1.0}, {row_dynamics(s, t), 1.0 / st.eta_discharge}});
      }
      for (int t = 0; t <= T_; ++t) {
        col.clear();
        if (t >= 1) col.emplace_back(row_dynamics(s, t - 1), 1.0);
        if (t < T_) col.emplace_back(row_dynamics(s, t), -1.0);
        lp.add_col(0.0, 0.0, 0.0, col);
      }
    }
  }

  DispatchOutcome unpack(const lp::LpSolution& sol) const {
    DispatchOutcome out;
    out.status = sol.status;
    out.iterations = sol.iterations;
    out.basis = sol.basis;
    out.dual = sol.dual;
    const auto& p = sol.primal;
    out.shed.resize(T_);
    double total = 0.0;
    for (int t = 0; t < T_; ++t) {
      out.shed[t] = std::max(0.0, p[col_shed(t)]);
      total += out.shed[t];
    }
    out.unserved = total;
    out.generation.resize(static_cast<std::size_t>(G_) * T_);
    for (int g = 0; g < G_; ++g) {
      for (int t = 0; t < T_; ++t) out.generation[g * T_ + t] = p[col_gen(g, t)];
    }
    out.renewable.resize(static_cast<std::size_t>(R_) * T_);
    for (int r = 0; r < R_; ++r) {
      for (int t = 0; t < T_; ++t) out.renewable[r * T_ + t] = p[col_ren(r, t)];
    }
    out.charge.resize(static_cast<std::size_t>(S_) * T_);
    out.discharge.resize(static_cast<std::size_t>(S_) * T_);
    out.soc.resize(static_cast<std::size_t>(S_) * (T_ + 1));
    for (int s = 0; s < S_; ++s) {
      for (int t = 0; t < T_; ++t) {
        out.charge[s * T_ + t] = p[col_charge(s, t)];
        out.discharge[s * T_ + t] = p[col_discharge(s, t)];
      }
      for (int t = 0; t <= T_; ++t) out.soc[s * (T_ + 1) + t] = p[col_soc(s, t)];
    }
    const Calendar& cal = sys_->calendar;
    out.day_shed.assign(cal.num_days(), 0.0);
    for (int t = 0; t < T_; ++t) out.day_shed[cal.day_of_hour(t)] += out.shed[t];
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
      if (std::abs(sol.dual[row_fuel(static_cast<int>(k))]) > 1e-9) ++out.binding_fuel_rows;
    }
    return out;
  }

  double greedy_pass(std::span<const double> x, const Scenario& sc,
                     const std::vector<double>& base, bool fuel_first) const {
    const SystemModel& sys = *sys_;
    std::vector<double> soc(S_);
    for (int s = 0; s < S_; ++s) {
      const auto& st = sys.storage[s];
      soc[s] = st.initial_soc_fraction * st.duration_hours * x[G_ + R_ + s];
    }
    // Remaining fuel budgets per row; rows of a generator covering hour t
    // are found through the calendar (day, week, month indices).
    std::vector<double> budget(fuel_rows_.size());
    for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
      budget[k] = fuel_rows_[k].fraction * fuel_rows_[k].hours.size() * x[fuel_rows_[k].gen];
    }
    std::vector<int> active(fuel_rows_.size());  // rows covering the current hour
    double total = 0.0;
    for (int t = 0; t < T_; ++t) {
      double need = base[t];
      auto run_fuel = [&] {
        if (need <= 0.0) return;
        for (int g = 0; g < G_ && need > 0.0; ++g) {
          if (!limited(g) || x[g] == 0.0 || !sc.up(g, t)) continue;
          double cap = std::min(x[g], need);
          int na = 0;
          for (std::size_t k = 0; k < fuel_rows_.size(); ++k) {
            const FuelRow& f = fuel_rows_[k];
            if (f.gen != g || t < f.hours.begin || t >= f.hours.end) continue;
            cap = std::min(cap, budget[k]);
            active[na++] = static_cast<int>(k);
          }
          if (cap <= 0.0) continue;
          for (int j = 0; j < na; ++j) budget[active[j]] -= cap;
          need -= cap;
        }
      };
      auto run_storage = [&] {
        for (int s = 0; s < S_; ++s) {
          const int i = G_ + R_ + s;
          if (x[i] == 0.0 || !sc.up(i, t)) continue;
          const auto& st = sys.storage[s];
          const double emax = st.duration_hours * x[i];
          if (need > 0.0) {
            const double p = std::min({x[i], need, soc[s] * st.eta_discharge});
            if (p <= 0.0) continue;
            soc[s] = std::max(0.0, soc[s] - p / st.eta_discharge);
            need -= p;
          } else if (need < 0.0) {
            const double p = std::min({x[i], -need, (emax - soc[s]) / st.eta_charge});
            if (p <= 0.0) continue;
            soc[s] = std::min(emax, soc[s] + st.eta_charge * p);
            need += p;
          }
        }
      };
      if (fuel_first) {
        run_fuel();
        run_storage();
      } else {
        run_storage();
        run_fuel();
      }
      if (need > 0.0) total += need;
    }
    return total;
  }

  static std::vector<double>& scratch_net() {
    thread_local std::vector<double> buf;
    return buf;
  }

  const SystemModel* sys_;
  DispatchOptions opt_;
  int T_ = 0, G_ = 0, R_ = 0, S_ = 0;
  std::vector<FuelRow> fuel_rows_;
  lp::LpInstance skeleton_;
};

// ---------------------------------------------------------------------------
// Free-function entry points over a throwaway DispatchModel. Callers solving
// many scenarios should hold a DispatchModel instead.

inline lp::LpInstance build_dispatch(const SystemModel& sys, std::span<const double> x,
                                     const Scenario& sc, const DispatchOptions& opt = {}) {
  return DispatchModel(sys, opt).instance(x, sc);
}

inline DispatchOutcome solve_dispatch(const SystemModel& sys, std::span<const double> x,
                                      const Scenario& sc, const DispatchOptions& opt = {}) {
  return DispatchModel(sys, opt).solve(x, sc);
}

inline CutCoefficients cut_affine(std::span<const double> theta, const Scenario& sc,
                                  const SystemModel& sys, const DispatchOptions& opt = {}) {
  const DispatchModel model(sys, opt);
  return model.affine(model.dual_form(theta), sc);
}

inline double eval_dual(std::span<const double> theta, const Scenario& sc,
                        std::span<const double> x, const SystemModel& sys,
                        const DispatchOptions& opt = {}) {
  const DispatchModel model(sys, opt);
  return model.eval(model.dual_form(theta), sc, x);
}

// Per-hour trace of one dispatch: hour, load, shed, conventional, renewable,
// storage net output (discharge - charge), total state of charge at hour end.
inline void write_dispatch_trace(const DispatchModel& model, const Scenario& sc,
                                 const DispatchOutcome& out, std::ostream& os) {
  const SystemModel& sys = model.system();
  const int T = model.horizon();
  const int G = static_cast<int>(sys.conventional.size());
  const int R = static_cast<int>(sys.renewable.size());
  const int S = static_cast<int>(sys.storage.size());
  os << "hour,load,shed,conventional,renewable,storage_net,soc\n";
  for (int t = 0; t < T; ++t) {
    double gen = 0.0, ren = 0.0, net = 0.0, soc = 0.0;
    for (int g = 0; g < G; ++g) gen += out.generation[g * T + t];
    for (int r = 0; r < R; ++r) ren += out.renewable[r * T + t];
    for (int s = 0; s < S; ++s) {
      net += out.discharge[s * T + t] - out.charge[s * T + t];
      soc += out.soc[s * (T + 1) + t + 1];
    }
    os << t + 1 << ',' << csv::format_double(sc.load_factor * sys.load[t]) << ','
       << csv::format_double(out.shed[t]) << ',' << csv::format_double(gen) << ','
       << csv::format_double(ren) << ',' << csv::format_double(net) << ','
       << csv::format_double(soc) << '\n';
  }
}

}  // namespace scp
