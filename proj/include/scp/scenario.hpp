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

// Uncertainty trajectories: Markov availability per unit, a representative
// daily profile per renewable unit and day, and a scalar load multiplier.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"
#include "scp/error.hpp"
#include "scp/model.hpp"
#include "scp/random.hpp"

namespace scp {

// One realized trajectory. Availability is stored bit-packed, one row of
// 64-bit words per unit, in the capacity-vector unit order.
struct Scenario {
  std::uint64_t seed_id = 0;
  int horizon = 0;
  int num_units = 0;
  int words_per_unit = 0;
  std::vector<std::uint64_t> availability;
  int num_days = 0;
  std::vector<std::uint16_t> profile_choice;  // [renewable * num_days + day]
  double load_factor = 1.0;

  bool up(int unit, int t) const {
    const std::uint64_t w = availability[unit * words_per_unit + (t >> 6)];
    return (w >> (t & 63)) & 1u;
  }
  int profile(int renewable, int day) const {
    return profile_choice[renewable * num_days + day];
  }
  const std::uint64_t* unit_words(int unit) const {
    return availability.data() + unit * words_per_unit;
  }
  bool operator==(const Scenario&) const = default;
};

namespace detail {

// Advances the two-state chain over T steps, calling emit(t, up) per hour.
// The initial state is drawn from the stationary law.
template <typename Emit>
void walk_chain(const OutageModel& m, int T, RandomStream& stream, Emit&& emit) {
  const double lam = m.repair_prob();
  const double mu = m.failure_prob();
  bool state = stream.uniform() < m.stationary_up();
  for (int t = 0; t < T; ++t) {
    if (t > 0) {
      const double u = stream.uniform();
      state = state ? !(u < mu) : (u < lam);
    }
    emit(t, state);
  }
}

}  // namespace detail

// A single availability path (1 = available).
inline std::vector<std::uint8_t> sample_availability(const OutageModel& outage,
                                                     int T, RandomStream& stream) {
  std::vector<std::uint8_t> path(T);
  detail::walk_chain(outage, T, stream,
                     [&](int t, bool up) { path[t] = up ? 1 : 0; });
  return path;
}

// Draw order: availability of every unit (conventional, renewable, storage),
// then profile indices renewable-major, then the load factor.
inline Scenario sample_scenario(const SystemModel& sys, RandomStream& stream) {
  Scenario sc;
  sc.seed_id = stream.stream_id();
  sc.horizon = sys.horizon();
  sc.num_units = sys.num_units();
  sc.words_per_unit = (sc.horizon + 63) / 64;
  sc.availability.assign(static_cast<std::size_t>(sc.num_units) * sc.words_per_unit, 0);
  for (int i = 0; i < sc.num_units; ++i) {
    std::uint64_t* row = sc.availability.data() + i * sc.words_per_unit;
    detail::walk_chain(sys.unit_outage(i), sc.horizon, stream, [&](int t, bool up) {
      if (up) row[t >> 6] |= std::uint64_t{1} << (t & 63);
    });
  }
  sc.num_days = sys.calendar.num_days();
  sc.profile_choice.resize(sys.renewable.size() * sc.num_days);
  for (std::size_t r = 0; r < sys.renewable.size(); ++r) {
    const auto& probs = sys.renewable[r].probabilities;
    for (int d = 0; d < sc.num_days; ++d) {
      sc.profile_choice[r * sc.num_days + d] =
          static_cast<std::uint16_t>(stream.discrete(probs));
    }
  }
  sc.load_factor = stream.uniform(sys.load_factor_low, sys.load_factor_high);
  return sc;
}

inline Scenario sample_scenario(const SystemModel& sys, std::uint64_t master_seed,
                                std::uint64_t index) {
  RandomStream stream = scenario_stream(master_seed, index);
  return sample_scenario(sys, stream);
}

// Capacity factor of renewable r at hour t under scenario sc.
inline double capacity_factor(const SystemModel& sys, const Scenario& sc, int r,
                              int t) {
  const int d = sys.calendar.day_of_hour(t);
  return sys.renewable[r].profiles[sc.profile(r, d)][sys.calendar.hour_of_day(t)];
}

// ---------------------------------------------------------------------------
// Representative days by k-medoids (PAM: BUILD then steepest SWAP).

struct Clustering {
  std::vector<int> medoids;  // historical day indices, ascending
  std::vector<double> probabilities;
  std::vector<int> cluster_sizes;
  std::vector<int> assignment;  // day -> position in `medoids`
  double objective = 0.0;       // sum of distances to assigned medoid
};

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t h = 0; h < a.size(); ++h) {
    const double d = a[h] - b[h];
    s += d * d;
  }
  return std::sqrt(s);
}

// Sum over days of the distance to the nearest of `medoids`.
inline double pam_objective(const std::vector<std::vector<double>>& dist,
                            const std::vector<int>& medoids) {
  double total = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (int m : medoids) best = std::min(best, dist[m][j]);
    total += best;
  }
  return total;
}

inline Clustering cluster_profiles(const std::vector<std::vector<double>>& days,
                                   int k, RandomStream& stream) {
  const int n = static_cast<int>(days.size());
  if (n == 0) throw ValidationError("input", "no historical days");
  if (k < 1 || k > n) {
    throw ValidationError("k", "need 1 <= k <= number of days (" +
                                   std::to_string(n) + ")");
  }
  const std::size_t width = days.front().size();
  for (int j = 0; j < n; ++j) {
    if (days[j].size() != width) {
      throw ValidationError("row " + std::to_string(j + 1), "ragged row");
    }
    for (std::size_t h = 0; h < width; ++h) {
      if (!(days[j][h] >= 0.0 && days[j][h] <= 1.0)) {
        throw ValidationError("row " + std::to_string(j + 1) + ", column " +
                                  std::to_string(h + 1),
                              "capacity factor outside [0,1]");
      }
    }
  }

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) dist[i][j] = dist[j][i] = euclidean(days[i], days[j]);
  }

  // BUILD. Exact ties among candidates are broken uniformly with `stream`.
  std::vector<int> medoids;
  std::vector<char> is_medoid(n, 0);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (int step = 0; step < k; ++step) {
    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<int> ties;
    for (int i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double score = 0.0;
      for (int j = 0; j < n; ++j) {
        score += medoids.empty() ? -dist[i][j] : std::max(0.0, nearest[j] - dist[i][j]);
      }
      if (score > best_score) {
        best_score = score;
        ties.assign(1, i);
      } else if (score == best_score) {
        ties.push_back(i);
      }
    }
    const int pick = ties[stream.below(ties.size())];
    medoids.push_back(pick);
    is_medoid[pick] = 1;
    for (int j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], dist[pick][j]);
  }

  // SWAP: apply the best improving (medoid, non-medoid) exchange until none.
  auto refresh = [&](std::vector<double>& d1, std::vector<double>& d2,
                     std::vector<int>& owner) {
    for (int j = 0; j < n; ++j) {
      d1[j] = d2[j] = std::numeric_limits<double>::infinity();
      owner[j] = -1;
      for (std::size_t p = 0; p < medoids.size(); ++p) {
        const double d = dist[medoids[p]][j];
        if (d < d1[j]) {
          d2[j] = d1[j];
          d1[j] = d;
          owner[j] = static_cast<int>(p);
        } else if (d < d2[j]) {
          d2[j] = d;
        }
      }
    }
  };
  std::vector<double> d1(n), d2(n);
  std::vector<int> owner(n);
  double cost = pam_objective(dist, medoids);
  for (int iter = 0; iter < 100 * n; ++iter) {
    refresh(d1, d2, owner);
    double best_delta = 0.0;
    int best_p = -1, best_o = -1;
    for (std::size_t p = 0; p < medoids.size(); ++p) {
      for (int o = 0; o < n; ++o) {
        if (is_medoid[o]) continue;
        double delta = 0.0;
        for (int j = 0; j < n; ++j) {
          const double via_o = dist[o][j];
          const double now = d1[j];
          const double after =
              owner[j] == static_cast<int>(p) ? std::min(via_o, d2[j]) : std::min(now, via_o);
          delta += after - now;
        }
        if (delta < best_delta - 1e-12 * (1.0 + cost)) {
          best_delta = delta;
          best_p = static_cast<int>(p);
          best_o = o;
        }
      }
    }
    if (best_p < 0) break;
    is_medoid[medoids[best_p]] = 0;
    medoids[best_p] = best_o;
    is_medoid[best_o] = 1;
    cost = pam_objective(dist, medoids);
  }

  Clustering out;
  out.medoids = medoids;
  std::sort(out.medoids.begin(), out.medoids.end());
  out.cluster_sizes.assign(k, 0);
  out.assignment.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    for (int p = 1; p < k; ++p) {
      if (dist[out.medoids[p]][j] < dist[out.medoids[best]][j]) best = p;
    }
    out.assignment[j] = best;
    ++out.cluster_sizes[best];
  }
  for (int p = 0; p < k; ++p) {
    out.probabilities.push_back(static_cast<double>(out.cluster_sizes[p]) / n);
  }
  out.objective = pam_objective(dist, out.medoids);
  return out;
}

// Representative-day library for one renewable resource.
struct ProfileLibrary {
  std::vector<std::vector<double>> medoids;
  std::vector<double> probabilities;
  std::vector<int> medoid_days;
  std::vector<int> cluster_sizes;
  std::string source;
  std::string source_sha256;
  int days = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const {
    return {{"format", 1},
            {"k", medoids.size()},
            {"hours_per_day", medoids.empty() ? 0 : medoids.front().size()},
            {"medoids", medoids},
            {"probabilities", probabilities},
            {"medoid_days", medoid_days},
            {"cluster_sizes", cluster_sizes},
            {"provenance",
             {{"source", source},
              {"source_sha256", source_sha256},
              {"days", days},
              {"seed", seed}}}};
  }
};

inline ProfileLibrary make_profile_library(
    const std::vector<std::vector<double>>& days, const Clustering& cl) {
  ProfileLibrary lib;
  for (int m : cl.medoids) lib.medoids.push_back(days[m]);
  lib.probabilities = cl.probabilities;
  lib.medoid_days = cl.medoids;
  lib.cluster_sizes = cl.cluster_sizes;
  lib.days = static_cast<int>(days.size());
  return lib;
}

}  // namespace scp
