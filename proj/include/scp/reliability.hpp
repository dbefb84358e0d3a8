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

// EUE / LOLE estimation with normal-approximation confidence intervals,
// out-of-sample validation of a fixed capacity vector, and load-shed
// distributions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scp/dispatch.hpp"
#include "scp/model.hpp"
#include "scp/parallel.hpp"
#include "scp/scenario.hpp"

namespace scp {

inline constexpr double kShedEps = 1e-6;  // MWh; a day counts as a loss day above this
inline constexpr double kZ95 = 1.96;

struct MetricEstimate {
  double mean = 0.0;
  double stddev = 0.0;      // sample standard deviation
  double half_width = 0.0;  // 1.96 s / sqrt(N)
  // Full CI width over the mean; undefined when the mean is zero.
  double relative_width = 0.0;
  bool relative_defined = false;

  double standard_error() const { return half_width / kZ95; }
};

inline MetricEstimate estimate_metric(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n < 2) throw std::invalid_argument("at least two samples are needed for a variance estimate");
  MetricEstimate m;
  double sum = 0.0;
  for (double x : v) sum += x;
  m.mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.stddev = std::sqrt(ss / (n - 1));
  m.half_width = kZ95 * m.stddev / std::sqrt(static_cast<double>(n));
  if (m.mean != 0.0) {
    m.relative_width = 2.0 * m.half_width / m.mean;
    m.relative_defined = true;
  }
  return m;
}

struct ReliabilityReport {
  std::string label;  // "in-sample" or "out-of-sample"
  std::size_t samples = 0;
  MetricEstimate eue;   // MWh per horizon
  MetricEstimate lole;  // days per horizon
  int days_in_horizon = 0;
  std::vector<double> unserved;       // per scenario
  std::vector<int> loss_days;         // per scenario
  std::vector<double> hour_of_day_shed;  // mean MWh per hour-of-day slot
  std::uint64_t master_seed = 0;
  std::uint64_t first_index = 0;
  double shed_eps = kShedEps;

  nlohmann::json to_json(bool include_samples = true) const {
    auto metric = [](const MetricEstimate& m) {
      nlohmann::json j{{"mean", m.mean},
                       {"stddev", m.stddev},
                       {"ci95_half_width", m.half_width},
                       {"standard_error", m.standard_error()}};
      j["relative_ci_width"] = m.relative_defined ? nlohmann::json(m.relative_width)
                                                  : nlohmann::json(nullptr);
      return j;
    };
    nlohmann::json j{{"format", 1},
                     {"label", label},
                     {"samples", samples},
                     {"units", {{"eue", "MWh per horizon"}, {"lole", "days per horizon"}}},
                     {"days_in_horizon", days_in_horizon},
                     {"eue", metric(eue)},
                     {"lole", metric(lole)},
                     {"shed_eps", shed_eps},
                     {"seed", {{"master_seed", master_seed}, {"first_index", first_index}}},
                     {"hour_of_day_shed", hour_of_day_shed}};
    if (include_samples) {
      j["unserved"] = unserved;
      j["loss_days"] = loss_days;
    }
    return j;
  }
};

// Report from per-scenario unserved energy and loss-day counts.
inline ReliabilityReport estimate(std::span<const double> unserved,
                                  std::span<const int> loss_days, int days_in_horizon,
                                  std::string label = "in-sample") {
  if (unserved.size() != loss_days.size()) {
    throw std::invalid_argument("unserved and loss-day samples differ in length");
  }
  ReliabilityReport r;
  r.label = std::move(label);
  r.samples = unserved.size();
  r.days_in_horizon = days_in_horizon;
  r.unserved.assign(unserved.begin(), unserved.end());
  r.loss_days.assign(loss_days.begin(), loss_days.end());
  r.eue = estimate_metric(unserved);
  std::vector<double> ld(loss_days.begin(), loss_days.end());
  r.lole = estimate_metric(ld);
  return r;
}

struct MetricComparison {
  bool overlap = false;
  double difference = 0.0;       // mean_a - mean_b
  double pooled_se_units = 0.0;  // |difference| / sqrt(se_a^2 + se_b^2)
};

inline MetricComparison compare_metric(double mean_a, double half_a, double mean_b,
                                       double half_b) {
  MetricComparison c;
  c.difference = mean_a - mean_b;
  c.overlap = mean_a - half_a <= mean_b + half_b && mean_b - half_b <= mean_a + half_a;
  const double se_a = half_a / kZ95, se_b = half_b / kZ95;
  const double pooled = std::sqrt(se_a * se_a + se_b * se_b);
  if (pooled > 0.0) {
    c.pooled_se_units = std::abs(c.difference) / pooled;
  } else {
    c.pooled_se_units = c.difference == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return c;
}

struct IsOosComparison {
  MetricComparison eue;
  MetricComparison lole;
  nlohmann::json to_json() const {
    auto one = [](const MetricComparison& m) {
      return nlohmann::json{{"overlap", m.overlap},
                            {"difference", m.difference},
                            {"pooled_se_units", m.pooled_se_units}};
    };
    return {{"eue", one(eue)}, {"lole", one(lole)}};
  }
};

inline IsOosComparison compare_is_oos(const ReliabilityReport& is, const ReliabilityReport& oos) {
  return {compare_metric(is.eue.mean, is.eue.half_width, oos.eue.mean, oos.eue.half_width),
          compare_metric(is.lole.mean, is.lole.half_width, oos.lole.mean, oos.lole.half_width)};
}

// Hourly shed of one scenario with positive unserved energy.
struct ShedTrace {
  std::uint64_t scenario = 0;
  std::vector<double> shed;  // [t]
  int binding_fuel_rows = 0;
};

// Exact per-scenario results at a fixed capacity vector.
struct EvaluationRun {
  std::vector<double> unserved;
  std::vector<int> loss_days;
  std::vector<ShedTrace> traces;  // scenarios with unserved > eps, index order
  int lp_solves = 0;
};

// Dispatches every scenario at x. Scenarios certified shed-free by the greedy
// bound skip the LP. Warm starts come from the first LP solved, which is
// solved sequentially, so results do not depend on `threads`.
inline EvaluationRun evaluate_scenarios(const DispatchModel& model, std::span<const double> x,
                                        const std::vector<Scenario>& scenarios, int threads) {
  const int n = static_cast<int>(scenarios.size());
  EvaluationRun run;
  run.unserved.assign(n, 0.0);
  run.loss_days.assign(n, 0);
  std::vector<char> needs_lp(n, 0);
  parallel_for(n, threads, [&](int i) {
    needs_lp[i] = model.shed_upper_bound(x, scenarios[i]) > 0.0;
  });
  std::vector<int> todo;
  for (int i = 0; i < n; ++i) {
    if (needs_lp[i]) todo.push_back(i);
  }
  std::vector<DispatchOutcome> outcomes(todo.size());
  if (!todo.empty()) {
    outcomes[0] = model.solve(x, scenarios[todo[0]]);
    const lp::Basis ref = outcomes[0].basis;
    parallel_for(static_cast<int>(todo.size()) - 1, threads, [&](int k) {
      outcomes[k + 1] = model.solve(x, scenarios[todo[k + 1]], &ref);
      outcomes[k + 1].basis = {};
    });
    outcomes[0].basis = {};
  }
  run.lp_solves = static_cast<int>(todo.size());
  for (std::size_t k = 0; k < todo.size(); ++k) {
    const int i = todo[k];
    const DispatchOutcome& o = outcomes[k];
    run.unserved[i] = o.unserved;
    int days = 0;
    for (double d : o.day_shed) days += d > kShedEps;
    run.loss_days[i] = days;
    if (o.unserved > kShedEps) {
      run.traces.push_back({scenarios[i].seed_id, o.shed, o.binding_fuel_rows});
    }
  }
  return run;
}

inline std::vector<double> hour_of_day_profile(const std::vector<ShedTrace>& traces,
                                               std::size_t samples, int hours_per_day) {
  std::vector<double> h(hours_per_day, 0.0);
  if (samples == 0) return h;
  for (const auto& tr : traces) {
    for (std::size_t t = 0; t < tr.shed.size(); ++t) h[t % hours_per_day] += tr.shed[t];
  }
  for (double& v : h) v /= static_cast<double>(samples);
  return h;
}

// Out-of-sample report: `samples` fresh scenarios from `master_seed`,
// dispatched at fixed x.
inline ReliabilityReport validate(const SystemModel& sys, std::span<const double> x,
                                  std::size_t samples, std::uint64_t master_seed,
                                  int threads = 1, const DispatchOptions& opt = {},
                                  EvaluationRun* run_out = nullptr) {
  if (!sys.feasible(std::vector<double>(x.begin(), x.end()), 1e-7)) {
    throw ValidationError("x", "capacity vector lies outside the feasible capacity set");
  }
  std::vector<Scenario> scenarios(samples);
  parallel_for(static_cast<int>(samples), threads,
               [&](int i) { scenarios[i] = sample_scenario(sys, master_seed, i); });
  const DispatchModel model(sys, opt);
  EvaluationRun run = evaluate_scenarios(model, x, scenarios, threads);
  ReliabilityReport r =
      estimate(run.unserved, run.loss_days, sys.calendar.num_days(), "out-of-sample");
  r.master_seed = master_seed;
  r.first_index = 0;
  r.hour_of_day_shed = hour_of_day_profile(run.traces, samples, sys.calendar.hours_per_day);
  if (run_out != nullptr) *run_out = std::move(run);
  return r;
}

struct ShedDistribution {
  struct HourBin {
    int hour = 0;       // hour of day, 0-based
    double total = 0.0;  // MWh summed over scenarios
    int count = 0;       // scenario-hours with shed
  };
  struct TotalBin {
    double lower = 0.0;
    double upper = 0.0;
    int count = 0;
  };
  std::vector<HourBin> by_hour;    // nonempty bins only, hour ascending
  std::vector<TotalBin> by_total;  // nonempty bins only
  int scenarios_with_shed = 0;
  int binding_fuel_scenarios = 0;
};

// Bins hourly shed by hour of day and scenario totals into `total_bins`
// equal-width bins over (0, max total].
inline ShedDistribution shed_distribution(const std::vector<ShedTrace>& traces,
                                          int hours_per_day, int total_bins = 20) {
  ShedDistribution d;
  std::map<int, ShedDistribution::HourBin> hours;
  double max_total = 0.0;
  std::vector<double> totals;
  for (const auto& tr : traces) {
    double total = 0.0;
    for (std::size_t t = 0; t < tr.shed.size(); ++t) {
      if (tr.shed[t] <= kShedEps) continue;
      auto& bin = hours[static_cast<int>(t) % hours_per_day];
      bin.hour = static_cast<int>(t) % hours_per_day;
      bin.total += tr.shed[t];
      ++bin.count;
      total += tr.shed[t];
    }
    if (tr.binding_fuel_rows > 0) ++d.binding_fuel_scenarios;
    if (total > kShedEps) {
      totals.push_back(total);
      max_total = std::max(max_total, total);
    }
  }
  for (const auto& [h, bin] : hours) d.by_hour.push_back(bin);
  d.scenarios_with_shed = static_cast<int>(totals.size());
  if (!totals.empty()) {
    const double w = max_total / total_bins;
    std::vector<int> counts(total_bins, 0);
    for (double v : totals) {
      counts[std::min(total_bins - 1, static_cast<int>(v / w))]++;
    }
    for (int b = 0; b < total_bins; ++b) {
      if (counts[b] > 0) d.by_total.push_back({b * w, (b + 1) * w, counts[b]});
    }
  }
  return d;
}

}  // namespace scp
