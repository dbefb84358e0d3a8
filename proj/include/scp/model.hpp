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

// Deterministic problem data: fleet, calendar, load, economics and the
// feasible capacity set.
//
// Capacity vector layout: x = (conventional..., renewable..., storage...), in
// the order the units appear in SystemModel.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "scp/error.hpp"

namespace scp {

// Half-open range of 0-based hour indices.
struct HourRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  bool operator==(const HourRange&) const = default;
};

struct Calendar {
  int horizon_hours = 0;
  int hours_per_day = 24;
  int days_per_week = 7;
  int days_per_month = 30;
  std::vector<HourRange> days;
  std::vector<HourRange> weeks;
  std::vector<HourRange> months;

  int num_days() const { return static_cast<int>(days.size()); }
  int num_weeks() const { return static_cast<int>(weeks.size()); }
  int num_months() const { return static_cast<int>(months.size()); }
  int day_of_hour(int t) const { return t / hours_per_day; }
  int hour_of_day(int t) const { return t % hours_per_day; }

  bool operator==(const Calendar&) const = default;
};

// Day blocks of `hours_per_day`, months of `days_per_month` days, and weeks of
// `days_per_week` days restarted at every month boundary so that days nest in
// weeks and weeks nest in months. Final blocks may be ragged.
inline Calendar build_calendar(int horizon_hours, int hours_per_day,
                               int days_per_week, int days_per_month) {
  if (horizon_hours < 1 || hours_per_day < 1 || days_per_week < 1 ||
      days_per_month < 1) {
    throw PartitionError("calendar sizes must all be >= 1");
  }
  Calendar cal;
  cal.horizon_hours = horizon_hours;
  cal.hours_per_day = hours_per_day;
  cal.days_per_week = days_per_week;
  cal.days_per_month = days_per_month;
  for (int h = 0; h < horizon_hours; h += hours_per_day) {
    cal.days.push_back({h, std::min(h + hours_per_day, horizon_hours)});
  }
  const int nd = cal.num_days();
  for (int m0 = 0; m0 < nd; m0 += days_per_month) {
    const int m1 = std::min(m0 + days_per_month, nd);
    cal.months.push_back({cal.days[m0].begin, cal.days[m1 - 1].end});
    for (int w0 = m0; w0 < m1; w0 += days_per_week) {
      const int w1 = std::min(w0 + days_per_week, m1);
      cal.weeks.push_back({cal.days[w0].begin, cal.days[w1 - 1].end});
    }
  }
  return cal;
}

// Two-state availability chain parameters. Repair probability lambda = 1/MTTR,
// failure probability mu = FOR / ((1 - FOR) MTTR).
struct OutageModel {
  double forced_outage_rate = 0.0;
  double mttr_hours = 1.0;

  double repair_prob() const { return 1.0 / mttr_hours; }
  double failure_prob() const {
    return forced_outage_rate / ((1.0 - forced_outage_rate) * mttr_hours);
  }
  double stationary_up() const {
    const double lam = repair_prob();
    return lam / (lam + failure_prob());
  }
  bool operator==(const OutageModel&) const = default;
};

// Builds an OutageModel whose transition probabilities are valid
// probabilities (mu <= 1). System validation is stricter and rejects mu >= 1.
inline OutageModel make_outage(double forced_outage_rate, double mttr_hours) {
  OutageModel m{forced_outage_rate, mttr_hours};
  if (!(forced_outage_rate > 0.0 && forced_outage_rate < 1.0)) {
    throw ValidationError("for", "forced outage rate must lie in (0,1)");
  }
  if (!(mttr_hours >= 1.0)) {
    throw ValidationError("mttr", "MTTR must be >= 1 hour");
  }
  if (m.failure_prob() > 1.0) {
    throw ValidationError("for", "failure probability exceeds 1");
  }
  return m;
}

struct ConventionalUnit {
  std::string id;
  double capacity_max = 0.0;  // MW
  double bid = 0.0;           // $/kW-month
  OutageModel outage;
  double k_day = 1.0;
  double k_week = 1.0;
  double k_month = 1.0;
  bool operator==(const ConventionalUnit&) const = default;
};

struct RenewableUnit {
  std::string id;
  double capacity_max = 0.0;
  double bid = 0.0;
  OutageModel outage;
  // profiles[k][h]: capacity factor of representative day k at hour-of-day h.
  std::vector<std::vector<double>> profiles;
  std::vector<double> probabilities;
  bool operator==(const RenewableUnit&) const = default;
};

struct StorageUnit {
  std::string id;
  double capacity_max = 0.0;  // MW, bounds the power rating x_s
  double bid = 0.0;
  OutageModel outage;
  double duration_hours = 1.0;
  double eta_charge = 1.0;
  double eta_discharge = 1.0;
  // Initial state of charge as a fraction of H_s x_s.
  double initial_soc_fraction = 0.0;
  bool operator==(const StorageUnit&) const = default;
};

// One general linear row of the feasible capacity set: sum coef * x <= rhs.
struct CapacityConstraint {
  std::map<std::string, double> coefficients;
  double rhs = 0.0;
  bool operator==(const CapacityConstraint&) const = default;
};

struct SystemModel {
  std::string name;
  Calendar calendar;
  std::vector<ConventionalUnit> conventional;
  std::vector<RenewableUnit> renewable;
  std::vector<StorageUnit> storage;
  std::vector<double> load;  // MW per hour
  double voll = 100000.0;    // $/MWh
  double bid_cap = 14.5;     // $/kW-month
  double load_factor_low = 0.8;
  double load_factor_high = 1.2;
  std::vector<CapacityConstraint> constraints;
  // Ingestion notes (bid clipping); not part of the model semantics.
  std::vector<std::string> warnings;

  int num_units() const {
    return static_cast<int>(conventional.size() + renewable.size() +
                            storage.size());
  }
  int horizon() const { return calendar.horizon_hours; }
  int first_renewable() const { return static_cast<int>(conventional.size()); }
  int first_storage() const {
    return static_cast<int>(conventional.size() + renewable.size());
  }

  const std::string& unit_id(int i) const {
    if (i < first_renewable()) return conventional[i].id;
    if (i < first_storage()) return renewable[i - first_renewable()].id;
    return storage[i - first_storage()].id;
  }
  const OutageModel& unit_outage(int i) const {
    if (i < first_renewable()) return conventional[i].outage;
    if (i < first_storage()) return renewable[i - first_renewable()].outage;
    return storage[i - first_storage()].outage;
  }
  double unit_capacity_max(int i) const {
    if (i < first_renewable()) return conventional[i].capacity_max;
    if (i < first_storage()) return renewable[i - first_renewable()].capacity_max;
    return storage[i - first_storage()].capacity_max;
  }
  double unit_bid(int i) const {
    if (i < first_renewable()) return conventional[i].bid;
    if (i < first_storage()) return renewable[i - first_renewable()].bid;
    return storage[i - first_storage()].bid;
  }
  int unit_index(const std::string& id) const {
    for (int i = 0; i < num_units(); ++i) {
      if (unit_id(i) == id) return i;
    }
    return -1;
  }

  // Capacity payment per MW over the horizon:
  // bid [$/kW-month] * 1000 [kW/MW] * number of month blocks.
  std::vector<double> capacity_cost() const {
    std::vector<double> c(num_units());
    const double months = calendar.num_months();
    for (int i = 0; i < num_units(); ++i) c[i] = unit_bid(i) * 1000.0 * months;
    return c;
  }

  std::vector<double> upper_bounds() const {
    std::vector<double> u(num_units());
    for (int i = 0; i < num_units(); ++i) u[i] = unit_capacity_max(i);
    return u;
  }

  // Dense rows of the general constraints over the capacity vector.
  std::vector<std::vector<double>> constraint_matrix() const {
    std::vector<std::vector<double>> rows;
    for (const auto& con : constraints) {
      std::vector<double> row(num_units(), 0.0);
      for (const auto& [id, coef] : con.coefficients) {
        const int i = unit_index(id);
        if (i >= 0) row[i] += coef;
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  // Membership in the feasible capacity set within `tol`.
  bool feasible(const std::vector<double>& x, double tol = 1e-9) const {
    if (static_cast<int>(x.size()) != num_units()) return false;
    for (int i = 0; i < num_units(); ++i) {
      if (x[i] < -tol || x[i] > unit_capacity_max(i) + tol) return false;
    }
    const auto rows = constraint_matrix();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double lhs = 0.0;
      for (int i = 0; i < num_units(); ++i) lhs += rows[r][i] * x[i];
      if (lhs > constraints[r].rhs + tol) return false;
    }
    return true;
  }

  bool operator==(const SystemModel& o) const {
    return name == o.name && calendar == o.calendar &&
           conventional == o.conventional && renewable == o.renewable &&
           storage == o.storage && load == o.load && voll == o.voll &&
           bid_cap == o.bid_cap && load_factor_low == o.load_factor_low &&
           load_factor_high == o.load_factor_high &&
           constraints == o.constraints;
  }
};

struct Violation {
  std::string field;
  std::string message;
};

namespace detail {

inline void check_outage(const OutageModel& m, const std::string& path,
                         std::vector<Violation>& out) {
  const double f = m.forced_outage_rate;
  if (!(f > 0.0 && f < 1.0)) {
    out.push_back({path + ".for", "forced outage rate must lie in (0,1)"});
    return;
  }
  if (!(m.mttr_hours >= 1.0)) {
    out.push_back({path + ".mttr", "MTTR must be >= 1 hour"});
    return;
  }
  if (!(m.failure_prob() < 1.0)) {
    out.push_back({path + ".for",
                   "failure probability mu = " +
                       std::to_string(m.failure_prob()) + " must be < 1"});
  }
}

inline bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace detail

// Checks every invariant of the model. An empty result means the model is
// valid.
inline std::vector<Violation> validate_system(const SystemModel& sys) {
  std::vector<Violation> out;
  const Calendar& cal = sys.calendar;
  const int T = cal.horizon_hours;
  if (T < 1) out.push_back({"calendar.hours", "horizon must be >= 1 hour"});

  auto check_partition = [&](const std::vector<HourRange>& blocks,
                             const char* name, int max_size) {
    int next = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].begin != next || blocks[b].end <= blocks[b].begin ||
          (max_size > 0 && blocks[b].size() > max_size)) {
        out.push_back({std::string("calendar.") + name + "[" +
                           std::to_string(b) + "]",
                       "blocks must be contiguous, non-empty and disjoint"});
        return;
      }
      next = blocks[b].end;
    }
    if (next != T) {
      out.push_back({std::string("calendar.") + name,
                     "partition does not cover the horizon"});
    }
  };
  check_partition(cal.days, "days", 24);
  check_partition(cal.weeks, "weeks", 0);
  check_partition(cal.months, "months", 0);

  if (static_cast<int>(sys.load.size()) != T) {
    out.push_back({"load", "expected " + std::to_string(T) + " hourly values"});
  }
  for (std::size_t t = 0; t < sys.load.size(); ++t) {
    if (!(sys.load[t] >= 0.0)) {
      out.push_back({"load[" + std::to_string(t) + "]", "load must be >= 0"});
    }
  }
  if (!(sys.voll > 0.0)) out.push_back({"economics.voll", "VOLL must be > 0"});
  if (!(sys.bid_cap >= 0.0)) {
    out.push_back({"economics.bid_cap", "bid cap must be >= 0"});
  }
  if (!(sys.load_factor_low > 0.0 &&
        sys.load_factor_low <= sys.load_factor_high)) {
    out.push_back({"uncertainty.load_factor",
                   "load factor interval must satisfy 0 < low <= high"});
  }

  auto check_common = [&](const std::string& path, double cap, double bid,
                          const OutageModel& outage) {
    if (!(cap >= 0.0)) out.push_back({path + ".capacity_max", "must be >= 0"});
    if (!(bid >= 0.0)) out.push_back({path + ".bid", "must be >= 0"});
    if (bid > sys.bid_cap) out.push_back({path + ".bid", "exceeds bid cap"});
    detail::check_outage(outage, path, out);
  };

  for (std::size_t g = 0; g < sys.conventional.size(); ++g) {
    const auto& u = sys.conventional[g];
    const std::string path = "conventional[" + std::to_string(g) + "]";
    check_common(path, u.capacity_max, u.bid, u.outage);
    if (!detail::in_unit_interval(u.k_day)) {
      out.push_back({path + ".k_day", "must lie in [0,1]"});
    }
    if (!detail::in_unit_interval(u.k_week)) {
      out.push_back({path + ".k_week", "must lie in [0,1]"});
    }
    if (!detail::in_unit_interval(u.k_month)) {
      out.push_back({path + ".k_month", "must lie in [0,1]"});
    }
  }
  for (std::size_t r = 0; r < sys.renewable.size(); ++r) {
    const auto& u = sys.renewable[r];
    const std::string path = "renewable[" + std::to_string(r) + "]";
    check_common(path, u.capacity_max, u.bid, u.outage);
    if (u.profiles.empty() || u.profiles.size() != u.probabilities.size()) {
      out.push_back({path + ".probabilities",
                     "need one probability per profile and at least one"});
    }
    double sum = 0.0;
    for (double p : u.probabilities) {
      if (!(p >= 0.0)) out.push_back({path + ".probabilities", "must be >= 0"});
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      out.push_back({path + ".probabilities",
                     "weights sum to " + std::to_string(sum) + ", not 1"});
    }
    for (std::size_t k = 0; k < u.profiles.size(); ++k) {
      if (static_cast<int>(u.profiles[k].size()) != cal.hours_per_day) {
        out.push_back({path + ".profiles[" + std::to_string(k) + "]",
                       "expected hours_per_day entries"});
      }
      for (double v : u.profiles[k]) {
        if (!detail::in_unit_interval(v)) {
          out.push_back({path + ".profiles[" + std::to_string(k) + "]",
                         "capacity factors must lie in [0,1]"});
          break;
        }
      }
    }
  }
  for (std::size_t s = 0; s < sys.storage.size(); ++s) {
    const auto& u = sys.storage[s];
    const std::string path = "storage[" + std::to_string(s) + "]";
    check_common(path, u.capacity_max, u.bid, u.outage);
    if (!(u.duration_hours > 0.0)) {
      out.push_back({path + ".duration", "must be > 0"});
    }
    if (!(u.eta_charge > 0.0 && u.eta_charge <= 1.0)) {
      out.push_back({path + ".eta_charge", "must lie in (0,1]"});
    }
    if (!(u.eta_discharge > 0.0 && u.eta_discharge <= 1.0)) {
      out.push_back({path + ".eta_discharge", "must lie in (0,1]"});
    }
    if (!detail::in_unit_interval(u.initial_soc_fraction)) {
      out.push_back({path + ".initial_soc_fraction", "must lie in [0,1]"});
    }
  }
  for (std::size_t c = 0; c < sys.constraints.size(); ++c) {
    const auto& con = sys.constraints[c];
    const std::string path = "constraints[" + std::to_string(c) + "]";
    for (const auto& [id, coef] : con.coefficients) {
      if (sys.unit_index(id) < 0) {
        out.push_back({path + ".coefficients." + id, "unknown unit id"});
      }
      if (!std::isfinite(coef)) {
        out.push_back({path + ".coefficients." + id, "must be finite"});
      }
    }
    if (!(con.rhs >= 0.0)) {
      out.push_back({path + ".rhs", "x = 0 must be feasible (rhs >= 0)"});
    }
  }
  for (int i = 0; i < sys.num_units(); ++i) {
    for (int j = i + 1; j < sys.num_units(); ++j) {
      if (sys.unit_id(i) == sys.unit_id(j)) {
        out.push_back({"units." + sys.unit_id(i), "duplicate unit id"});
      }
    }
  }
  return out;
}

// Clips every bid to the bid cap, recording one warning per clipped unit.
inline void clip_bids(SystemModel& sys) {
  auto clip = [&](const std::string& id, double& bid) {
    if (bid > sys.bid_cap) {
      sys.warnings.push_back("bid of unit '" + id + "' (" +
                             std::to_string(bid) + ") clipped to cap " +
                             std::to_string(sys.bid_cap));
      bid = sys.bid_cap;
    }
  };
  for (auto& u : sys.conventional) clip(u.id, u.bid);
  for (auto& u : sys.renewable) clip(u.id, u.bid);
  for (auto& u : sys.storage) clip(u.id, u.bid);
}

}  // namespace scp
