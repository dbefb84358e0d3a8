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

// Stabilized stochastic decomposition for the capacity auction:
//   min_{x in X} c'x + VOLL * E[U(x, xi)].
//
// Cuts live in MWh. VOLL enters only through the master objective and the
// reported objective F(x) = c'x + VOLL * max(0, max_j cut_j(x)).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "scp/dispatch.hpp"
#include "scp/error.hpp"
#include "scp/master.hpp"
#include "scp/model.hpp"
#include "scp/parallel.hpp"
#include "scp/reliability.hpp"
#include "scp/scenario.hpp"

namespace scp {

struct SDState;

struct SDConfig {
  int batch = 32;
  std::optional<double> rho;  // unset: 1e-2 * median capacity cost
  double r = 0.2;
  double master_tol = 1e-9;
  std::size_t max_samples = 20000;
  double eue_se_target = 0.25;  // (s / sqrt(N)) / mean at the incumbent
  double gap_threshold = 1e-4;  // on the relative model gap
  int gap_patience = 20;
  std::uint64_t seed = 1;
  int threads = 1;
  std::size_t affine_cache_entries = 1000000;
  bool in_sample_report = true;
  DispatchOptions dispatch;
  // Called once per iteration after the master solve.
  std::function<void(const SDState&)> observer;

  void validate() const {
    if (batch < 1) throw ValidationError("batch", "batch size must be >= 1");
    if (rho && !(*rho > 0.0)) throw ValidationError("rho", "proximal penalty must be > 0");
    if (!(r > 0.0 && r < 1.0)) throw ValidationError("r", "incumbent ratio must lie in (0,1)");
    if (!(master_tol > 0.0)) throw ValidationError("master_tol", "must be > 0");
    if (max_samples < static_cast<std::size_t>(batch)) {
      throw ValidationError("max_samples", "must be at least the batch size");
    }
    if (!(eue_se_target > 0.0)) throw ValidationError("eue_se_target", "must be > 0");
    if (!(gap_threshold >= 0.0)) throw ValidationError("gap_threshold", "must be >= 0");
    if (gap_patience < 1) throw ValidationError("gap_patience", "must be >= 1");
    if (threads < 1) throw ValidationError("threads", "must be >= 1");
  }
};

inline double default_rho(const SystemModel& sys) {
  std::vector<double> c = sys.capacity_cost();
  if (c.empty()) return 1.0;
  std::sort(c.begin(), c.end());
  const std::size_t n = c.size();
  const double median = n % 2 ? c[n / 2] : 0.5 * (c[n / 2 - 1] + c[n / 2]);
  return median > 0.0 ? 1e-2 * median : 1.0;
}

enum class CutKind { kCandidate, kIncumbent };

inline const char* to_string(CutKind k) {
  return k == CutKind::kCandidate ? "candidate" : "incumbent";
}

struct Cut {
  double alpha = 0.0;
  std::vector<double> beta;
  int born_at = 0;
  CutKind kind = CutKind::kCandidate;
  int last_refresh = 0;

  double value(std::span<const double> x) const {
    double v = alpha;
    for (std::size_t i = 0; i < beta.size(); ++i) v += beta[i] * x[i];
    return v;
  }
  double sup_norm() const {
    double m = std::abs(alpha);
    for (double b : beta) m = std::max(m, std::abs(b));
    return m;
  }
};

// Distinct dual vectors with stable ids. Id 0 is the zero dual.
class DualCache {
 public:
  explicit DualCache(const DispatchModel& model) : model_(&model) {
    insert(std::vector<double>(model.num_rows(), 0.0));
  }

  // Projects and stores y unless an equal vector (after rounding) is
  // present. Returns the id and whether it was new.
  std::pair<int, bool> insert(std::span<const double> y) {
    DualForm form = model_->dual_form(y);
    std::vector<std::int64_t> key(form.y.size());
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < form.y.size(); ++i) {
      key[i] = std::llround(form.y[i] * 1e9);
      h = (h ^ static_cast<std::uint64_t>(key[i])) * 1099511628211ull;
    }
    auto& bucket = index_[h];
    for (int id : bucket) {
      if (keys_[id] == key) return {id, false};
    }
    const int id = static_cast<int>(forms_.size());
    bucket.push_back(id);
    keys_.push_back(std::move(key));
    forms_.push_back(std::move(form));
    return {id, true};
  }

  std::size_t size() const { return forms_.size(); }
  const DualForm& operator[](int id) const { return forms_[id]; }

 private:
  const DispatchModel* model_;
  std::vector<DualForm> forms_;
  std::vector<std::vector<std::int64_t>> keys_;
  std::unordered_map<std::uint64_t, std::vector<int>> index_;
};

// LRU cache of affine forms keyed by (dual id, scenario index).
class AffineCache {
 public:
  explicit AffineCache(std::size_t capacity) : capacity_(capacity) {}

  template <typename Compute>
  const CutCoefficients& get(int dual, std::size_t scenario, Compute&& compute) {
    const std::uint64_t key = (static_cast<std::uint64_t>(dual) << 32) | scenario;
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    ++misses_;
    if (capacity_ == 0) {
      scratch_ = compute();
      return scratch_;
    }
    if (map_.size() >= capacity_) {
      map_.erase(order_.back().first);
      order_.pop_back();
    }
    order_.emplace_front(key, compute());
    map_[key] = order_.begin();
    return order_.front().second;
  }

  std::size_t size() const { return map_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  using Entry = std::pair<std::uint64_t, CutCoefficients>;
  std::size_t capacity_;
  std::list<Entry> order_;
  std::unordered_map<std::uint64_t, std::list<Entry>::iterator> map_;
  CutCoefficients scratch_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// Multiplies every cut whose born_at is not in `keep` by (k-1)/k and drops
// decayed cuts whose sup-norm falls below 1e-12.
inline void decay_cuts(std::vector<Cut>& cuts, int k, std::span<const int> keep) {
  const double f = static_cast<double>(k - 1) / k;
  std::vector<Cut> out;
  out.reserve(cuts.size());
  for (Cut& c : cuts) {
    if (std::find(keep.begin(), keep.end(), c.born_at) != keep.end()) {
      out.push_back(std::move(c));
      continue;
    }
    c.alpha *= f;
    for (double& b : c.beta) b *= f;
    if (c.sup_norm() >= 1e-12) out.push_back(std::move(c));
  }
  cuts = std::move(out);
}

// Cut model in MWh; the implicit zero cut keeps it nonnegative.
inline double cut_model(const std::vector<Cut>& cuts, std::span<const double> x) {
  double v = 0.0;
  for (const Cut& c : cuts) v = std::max(v, c.value(x));
  return v;
}

// Non-strict descent test.
inline bool incumbent_test(double new_at_candidate, double new_at_incumbent,
                           double old_at_candidate, double old_at_incumbent, double r) {
  return new_at_candidate - new_at_incumbent <= r * (old_at_candidate - old_at_incumbent);
}

struct SDHistoryRow {
  int k = 0;
  std::size_t samples = 0;
  double gap = 0.0;           // F_k(xbar_k) - F_k(x_{k+1}), $
  double gap_relative = 0.0;  // gap / max(1, |F_k(xbar_k)|)
  double objective = 0.0;     // F_k(xbar_k), $
  double model_value = 0.0;   // cut model at xbar_k, MWh
  double capacity_cost = 0.0;  // c'xbar_k, $
  bool incumbent_changed = false;
  int incumbent_index = 0;
  std::size_t cuts = 0;
  std::size_t duals = 0;
  double eue_in_sample = 0.0;  // mean cache value at the incumbent, MWh
  double se_ratio = 0.0;
  int lp_solves = 0;
  double wall_seconds = 0.0;
};

// Per-scenario bookkeeping for the argmax scans.
struct ScenarioSlot {
  Scenario scenario;
  int candidate_dual = 0;  // best dual at the last candidate refresh
  int incumbent_dual = 0;
  double incumbent_value = 0.0;
  double incumbent_bound = 0.0;
  std::size_t incumbent_scanned = 0;  // cache size covered by incumbent_dual
  std::uint64_t incumbent_epoch = std::numeric_limits<std::uint64_t>::max();
};

struct SDState {
  explicit SDState(const DispatchModel& model) : duals(model) {}

  int k = 0;
  std::size_t samples = 0;
  std::vector<ScenarioSlot> slots;
  std::vector<Cut> cuts;
  DualCache duals;
  std::vector<double> x;          // x_{k+1} after the master solve
  std::vector<double> candidate;  // x_k
  int incumbent_index = 0;
  std::vector<double> incumbent;
  std::vector<int> refreshed;  // born_at of the cuts refreshed at k
  std::vector<double> gap_history;
  std::vector<double> objective_history;
  MasterSolution master;
};

enum class SDTermination { kConverged, kMaxSamples };

struct SDResult {
  std::vector<double> x_star;
  std::vector<SDHistoryRow> history;
  SDTermination termination = SDTermination::kMaxSamples;
  bool se_target_met = false;
  int iterations = 0;
  std::size_t samples = 0;
  double rho = 0.0;
  double objective = 0.0;  // final F(xbar)
  double model_value = 0.0;
  std::uint64_t seed = 0;
  std::size_t duals = 0;
  long lp_solves = 0;
  std::size_t affine_hits = 0;
  std::size_t affine_misses = 0;
  std::optional<ReliabilityReport> in_sample;
  std::vector<ShedTrace> in_sample_traces;

  int exit_code() const {
    return termination == SDTermination::kMaxSamples && !se_target_met ? kExitTargetUnmet
                                                                        : kExitOk;
  }
};

namespace detail {

struct ArgmaxResult {
  int id = 0;
  double value = 0.0;
};

// Best cached dual for one scenario at x, starting from `start`, trying
// `hint` first and then ids in [from, |Pi|). Stops once within `tol` of the
// upper bound `ub`.
inline ArgmaxResult argmax_dual(const DispatchModel& model, const DualCache& pi,
                                const Scenario& sc, std::span<const double> x, double ub,
                                ArgmaxResult start, int hint, std::size_t from) {
  const double tol = 1e-7 * std::max(1.0, ub);
  ArgmaxResult best = start;
  if (best.value >= ub - tol) return best;
  if (hint > 0 && hint != best.id) {
    const double v = model.eval(pi[hint], sc, x);
    if (v > best.value) best = {hint, v};
    if (best.value >= ub - tol) return best;
  }
  for (std::size_t id = std::max<std::size_t>(from, 1); id < pi.size(); ++id) {
    if (static_cast<int>(id) == hint) continue;
    const double v = model.eval(pi[id], sc, x);
    if (v > best.value) {
      best = {static_cast<int>(id), v};
      if (best.value >= ub - tol) break;
    }
  }
  return best;
}

inline double capacity_cost_at(const std::vector<double>& c, std::span<const double> x) {
  double v = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * x[i];
  return v;
}

}  // namespace detail

// Sample-average cut at x from the chosen duals (index order reduction).
inline Cut assemble_cut(const DispatchModel& model, const SDState& st,
                        const std::vector<int>& chosen, AffineCache& cache) {
  const int n = model.system().num_units();
  Cut cut;
  cut.beta.assign(n, 0.0);
  for (std::size_t t = 0; t < chosen.size(); ++t) {
    if (chosen[t] == 0) continue;
    const CutCoefficients& a = cache.get(chosen[t], t, [&] {
      return model.affine(st.duals[chosen[t]], st.slots[t].scenario);
    });
    cut.alpha += a.a;
    for (int i = 0; i < n; ++i) cut.beta[i] += a.b[i];
  }
  const double inv = 1.0 / static_cast<double>(chosen.size());
  cut.alpha *= inv;
  for (double& b : cut.beta) b *= inv;
  return cut;
}

inline SDResult run_sd(const SystemModel& sys, const SDConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  cfg.validate();
  if (const auto v = validate_system(sys); !v.empty()) {
    throw ValidationError(v.front().field, v.front().message);
  }
  const int n = sys.num_units();
  const DispatchModel model(sys, cfg.dispatch);
  const std::vector<double> c = sys.capacity_cost();
  const double voll = sys.voll;
  const double rho = cfg.rho ? *cfg.rho : default_rho(sys);
  const int threads = cfg.threads;

  MasterProblem master;
  master.cost = c;
  master.eta_weight = voll;
  master.rho = rho;
  master.upper = sys.upper_bounds();
  master.rows = sys.constraint_matrix();
  for (const auto& con : sys.constraints) master.rhs.push_back(con.rhs);

  SDState st(model);
  AffineCache affine(cfg.affine_cache_entries);
  SDResult res;
  res.seed = cfg.seed;
  res.rho = rho;

  auto full_objective = [&](std::span<const double> x) {
    return detail::capacity_cost_at(c, x) + voll * cut_model(st.cuts, x);
  };

  std::vector<double> x(n, 0.0);  // x_1 = x_0 = 0
  std::vector<double> xbar = x;
  int ibar = 0;
  std::uint64_t epoch = 0;  // bumps whenever the incumbent changes
  std::optional<lp::Basis> basis_candidate, basis_incumbent;
  int consecutive = 0;
  long lp_total = 0;

  for (int k = 1;; ++k) {
    const auto t_iter = Clock::now();
    st.k = k;
    st.candidate = x;
    const std::size_t n_old = st.slots.size();
    const std::size_t n_new = n_old + cfg.batch;

    // Models of iteration k-1 at x_k and xbar_{k-1}.
    const double old_at_candidate = full_objective(x);
    const double old_at_incumbent = full_objective(xbar);

    // Sample the new batch.
    st.slots.resize(n_new);
    parallel_for(cfg.batch, threads, [&](int j) {
      st.slots[n_old + j].scenario = sample_scenario(sys, cfg.seed, n_old + j);
    });
    st.samples = n_new;

    // Dispatch the new scenarios at x_k and xbar_{k-1}.
    std::vector<double> exact_candidate(cfg.batch), exact_incumbent(cfg.batch);
    std::vector<std::vector<double>> y_candidate(cfg.batch), y_incumbent(cfg.batch);
    int lp_solves = 0;
    auto solve_batch = [&](std::span<const double> point, std::vector<double>& exact,
                           std::vector<std::vector<double>>& ys,
                           std::optional<lp::Basis>& ref) {
      std::vector<char> need(cfg.batch, 0);
      parallel_for(cfg.batch, threads, [&](int j) {
        need[j] = model.shed_upper_bound(point, st.slots[n_old + j].scenario) > 0.0;
      });
      std::vector<int> todo;
      for (int j = 0; j < cfg.batch; ++j) {
        exact[j] = 0.0;
        if (need[j]) todo.push_back(j);
      }
      if (todo.empty()) return;
      DispatchOutcome first =
          model.solve(point, st.slots[n_old + todo[0]].scenario, ref ? &*ref : nullptr);
      ref = first.basis;
      exact[todo[0]] = first.unserved;
      ys[todo[0]] = std::move(first.dual);
      const lp::Basis warm = *ref;
      parallel_for(static_cast<int>(todo.size()) - 1, threads, [&](int m) {
        const int j = todo[m + 1];
        DispatchOutcome o = model.solve(point, st.slots[n_old + j].scenario, &warm);
        exact[j] = o.unserved;
        ys[j] = std::move(o.dual);
      });
      lp_solves += static_cast<int>(todo.size());
    };
    solve_batch(x, exact_candidate, y_candidate, basis_candidate);
    solve_batch(xbar, exact_incumbent, y_incumbent, basis_incumbent);
    lp_total += lp_solves;

    // Grow Pi: candidate duals, then incumbent duals, in scenario order.
    std::vector<int> new_candidate_ids(cfg.batch, 0), new_incumbent_ids(cfg.batch, 0);
    for (int j = 0; j < cfg.batch; ++j) {
      if (!y_candidate[j].empty()) new_candidate_ids[j] = st.duals.insert(y_candidate[j]).first;
    }
    for (int j = 0; j < cfg.batch; ++j) {
      if (!y_incumbent[j].empty()) new_incumbent_ids[j] = st.duals.insert(y_incumbent[j]).first;
    }
    for (int j = 0; j < cfg.batch; ++j) {
      st.slots[n_old + j].candidate_dual = new_candidate_ids[j];
      st.slots[n_old + j].incumbent_dual = new_incumbent_ids[j];
    }

    // Argmax over Pi for every scenario at x_k and at xbar_{k-1}.
    std::vector<int> chosen_candidate(n_new, 0), chosen_incumbent(n_new, 0);
    std::vector<double> value_incumbent(n_new, 0.0);
    std::vector<double> value_candidate(n_new, 0.0), bound_candidate(n_new, 0.0);
    const std::size_t pi_size = st.duals.size();
    parallel_for(static_cast<int>(n_new), threads, [&](int t) {
      ScenarioSlot& s = st.slots[t];
      const bool fresh = static_cast<std::size_t>(t) >= n_old;
      // Candidate.
      const double ub_c = fresh ? exact_candidate[t - n_old] : model.shed_upper_bound(x, s.scenario);
      detail::ArgmaxResult bc;
      if (ub_c > 0.0) {
        bc = detail::argmax_dual(model, st.duals, s.scenario, x, ub_c, {0, 0.0},
                                 s.candidate_dual, 1);
      }
      s.candidate_dual = bc.id;
      chosen_candidate[t] = bc.id;
      value_candidate[t] = bc.value;
      bound_candidate[t] = ub_c;
      // Incumbent: incremental while the incumbent is unchanged.
      detail::ArgmaxResult bi;
      if (!fresh && s.incumbent_epoch == epoch) {
        if (s.incumbent_bound > 0.0) {
          bi = detail::argmax_dual(model, st.duals, s.scenario, xbar, s.incumbent_bound,
                                   {s.incumbent_dual, s.incumbent_value}, -1,
                                   s.incumbent_scanned);
        }
      } else {
        s.incumbent_bound =
            fresh ? exact_incumbent[t - n_old] : model.shed_upper_bound(xbar, s.scenario);
        s.incumbent_epoch = epoch;
        if (s.incumbent_bound > 0.0) {
          bi = detail::argmax_dual(model, st.duals, s.scenario, xbar, s.incumbent_bound,
                                   {0, 0.0}, s.incumbent_dual, 1);
        }
      }
      s.incumbent_dual = bi.id;
      s.incumbent_value = bi.value;
      s.incumbent_scanned = pi_size;
      chosen_incumbent[t] = bi.id;
      value_incumbent[t] = bi.value;
    });

    // Rebuild the two active cuts; decay the rest.
    Cut cand = assemble_cut(model, st, chosen_candidate, affine);
    cand.born_at = k;
    cand.kind = CutKind::kCandidate;
    cand.last_refresh = k;
    Cut inc = assemble_cut(model, st, chosen_incumbent, affine);
    inc.born_at = ibar;
    inc.kind = CutKind::kIncumbent;
    inc.last_refresh = k;
    st.refreshed = {ibar, k};
    decay_cuts(st.cuts, k, st.refreshed);
    bool placed = false;
    for (Cut& cut : st.cuts) {
      if (cut.born_at == ibar) {
        cut = inc;
        placed = true;
      }
    }
    if (!placed) {
      st.cuts.push_back(inc);
      std::sort(st.cuts.begin(), st.cuts.end(),
                [](const Cut& a, const Cut& b) { return a.born_at < b.born_at; });
    }
    st.cuts.push_back(std::move(cand));

    // Incumbent test with the full objective.
    const double new_at_candidate = full_objective(x);
    const double new_at_incumbent = full_objective(xbar);
    const bool changed = incumbent_test(new_at_candidate, new_at_incumbent, old_at_candidate,
                                        old_at_incumbent, cfg.r);
    if (changed) {
      xbar = x;
      ibar = k;
      ++epoch;
      // The candidate scan is a complete scan at the new incumbent.
      for (std::size_t t = 0; t < n_new; ++t) {
        ScenarioSlot& s = st.slots[t];
        s.incumbent_dual = chosen_candidate[t];
        s.incumbent_value = value_candidate[t];
        s.incumbent_bound = bound_candidate[t];
        s.incumbent_scanned = pi_size;
        s.incumbent_epoch = epoch;
      }
      value_incumbent = value_candidate;
      basis_incumbent = basis_candidate;
    }
    st.incumbent_index = ibar;
    st.incumbent = xbar;

    // Master.
    master.center = xbar;
    master.cuts.clear();
    master.cuts.push_back({0.0, std::vector<double>(n, 0.0)});
    for (const Cut& cut : st.cuts) master.cuts.push_back({cut.alpha, cut.beta});
    st.master = solve_master(master, cfg.master_tol);
    st.x = st.master.x;

    const double f_bar = full_objective(xbar);
    const double f_next = full_objective(st.master.x);
    const double gap = f_bar - f_next;
    const double gap_rel = gap / std::max(1.0, std::abs(f_bar));
    st.gap_history.push_back(gap);
    st.objective_history.push_back(f_bar);

    // In-sample EUE standard-error ratio at the incumbent.
    double mean = 0.0;
    for (double v : value_incumbent) mean += v;
    mean /= static_cast<double>(n_new);
    double ss = 0.0;
    for (double v : value_incumbent) ss += (v - mean) * (v - mean);
    const double sd = n_new > 1 ? std::sqrt(ss / (n_new - 1)) : 0.0;
    const double se = sd / std::sqrt(static_cast<double>(n_new));
    const double se_ratio = mean > 0.0 ? se / mean : 0.0;

    SDHistoryRow row;
    row.k = k;
    row.samples = n_new;
    row.gap = gap;
    row.gap_relative = gap_rel;
    row.objective = f_bar;
    row.model_value = cut_model(st.cuts, xbar);
    row.capacity_cost = detail::capacity_cost_at(c, xbar);
    row.incumbent_changed = changed;
    row.incumbent_index = ibar;
    row.cuts = st.cuts.size();
    row.duals = st.duals.size();
    row.eue_in_sample = mean;
    row.se_ratio = se_ratio;
    row.lp_solves = lp_solves;
    row.wall_seconds = std::chrono::duration<double>(Clock::now() - t_iter).count();
    res.history.push_back(row);

    if (cfg.observer) cfg.observer(st);

    const bool se_ok = se_ratio <= cfg.eue_se_target;
    consecutive = se_ok && gap_rel <= cfg.gap_threshold ? consecutive + 1 : 0;
    res.se_target_met = se_ok;
    if (consecutive >= cfg.gap_patience) {
      res.termination = SDTermination::kConverged;
      break;
    }
    if (n_new >= cfg.max_samples) {
      res.termination = SDTermination::kMaxSamples;
      break;
    }
    x = st.master.x;
  }

  res.x_star = xbar;
  res.iterations = st.k;
  res.samples = st.samples;
  res.objective = full_objective(xbar);
  res.model_value = cut_model(st.cuts, xbar);
  res.duals = st.duals.size();
  res.affine_hits = affine.hits();
  res.affine_misses = affine.misses();
  if (cfg.in_sample_report && st.samples >= 2) {
    std::vector<Scenario> scenarios;
    scenarios.reserve(st.slots.size());
    for (const auto& s : st.slots) scenarios.push_back(s.scenario);
    EvaluationRun run = evaluate_scenarios(model, xbar, scenarios, threads);
    lp_total += run.lp_solves;
    res.in_sample = estimate(run.unserved, run.loss_days, sys.calendar.num_days(), "in-sample");
    res.in_sample->master_seed = cfg.seed;
    res.in_sample->hour_of_day_shed =
        hour_of_day_profile(run.traces, scenarios.size(), sys.calendar.hours_per_day);
    res.in_sample_traces = std::move(run.traces);
  }
  res.lp_solves = lp_total;
  return res;
}

inline nlohmann::json config_to_json(const SDConfig& cfg, double rho) {
  return {{"batch", cfg.batch},
          {"rho", rho},
          {"rho_default", !cfg.rho.has_value()},
          {"r", cfg.r},
          {"master_tol", cfg.master_tol},
          {"max_samples", cfg.max_samples},
          {"eue_se_target", cfg.eue_se_target},
          {"gap_threshold", cfg.gap_threshold},
          {"gap_patience", cfg.gap_patience},
          {"seed", cfg.seed},
          {"threads", cfg.threads},
          {"affine_cache_entries", cfg.affine_cache_entries},
          {"include_redundant_fuel_rows", cfg.dispatch.include_redundant_fuel_rows}};
}

}  // namespace scp
