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

#include <catch_amalgamated.hpp>
#include <algorithm>
#include <numeric>
#include <random>

#include "scp/scenario.hpp"
#include "scp/synthetic.hpp"
#include "test_support.hpp"

using Catch::Approx;

namespace {

struct TransitionCounts {
  double n[2][2] = {{0, 0}, {0, 0}};  // [from][to], 1 = up
};

TransitionCounts count_transitions(const std::vector<std::uint8_t>& path) {
  TransitionCounts c;
  for (std::size_t t = 1; t < path.size(); ++t) c.n[path[t - 1]][path[t]] += 1;
  return c;
}

// Pearson statistic of the transition counts against the chain's rows.
// Each row contributes one degree of freedom.
double transition_chi_square(const TransitionCounts& c, double lam, double mu) {
  const double p[2][2] = {{1 - lam, lam}, {mu, 1 - mu}};
  double chi = 0.0;
  for (int from = 0; from < 2; ++from) {
    const double rows = c.n[from][0] + c.n[from][1];
    for (int to = 0; to < 2; ++to) {
      const double e = rows * p[from][to];
      if (e > 0) chi += (c.n[from][to] - e) * (c.n[from][to] - e) / e;
    }
  }
  return chi;
}

constexpr double kChi2Df2At001 = 13.815510557964274;

// Brute-force PAM optimum over all k-subsets.
double best_subset_objective(const std::vector<std::vector<double>>& days, int k) {
  const int n = static_cast<int>(days.size());
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist[i][j] = scp::euclidean(days[i], days[j]);
  }
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + k, 1);
  double best = 1e300;
  do {
    std::vector<int> m;
    for (int i = 0; i < n; ++i) {
      if (pick[i]) m.push_back(i);
    }
    best = std::min(best, scp::pam_objective(dist, m));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST_CASE("near-zero FOR keeps units available", "[scenario][markov]") {
  auto stream = scp::scenario_stream(1, 0);
  const auto path = scp::sample_availability(scp::make_outage(1e-12, 10), 1000, stream);
  CHECK(std::all_of(path.begin(), path.end(), [](auto v) { return v == 1; }));
}

TEST_CASE("FOR 0.5 with MTTR 1 alternates", "[scenario][markov]") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto stream = scp::scenario_stream(7, s);
    const auto path = scp::sample_availability(scp::make_outage(0.5, 1), 200, stream);
    for (std::size_t t = 1; t < path.size(); ++t) CHECK(path[t] != path[t - 1]);
  }
}

TEST_CASE("long path matches the stationary law and the transition matrix",
          "[scenario][markov][oracle]") {
  const auto m = scp::make_outage(0.05, 10);
  auto stream = scp::scenario_stream(2026, 0);
  const int T = 1000000;
  const auto path = scp::sample_availability(m, T, stream);
  const double up = std::accumulate(path.begin(), path.end(), 0.0) / T;
  // Independent-sample half-width from the task; the chain's autocorrelation
  // inflates the true standard error, so also allow the exact Markov width.
  const double iid = 3.0 * std::sqrt(0.0475 / T);
  const double rho = 1.0 - m.repair_prob() - m.failure_prob();
  const double markov = iid * std::sqrt((1 + rho) / (1 - rho));
  INFO("up fraction " << up);
  CHECK(std::abs(up - 0.95) <= markov);

  const auto counts = count_transitions(path);
  CHECK(transition_chi_square(counts, m.repair_prob(), m.failure_prob()) < kChi2Df2At001);

  double mean = up, num = 0.0, den = 0.0;
  for (int t = 0; t < T; ++t) {
    den += (path[t] - mean) * (path[t] - mean);
    if (t > 0) num += (path[t] - mean) * (path[t - 1] - mean);
  }
  CHECK(num / den == Approx(0.8947).margin(0.005));
}

TEST_CASE("pooled paths pass the chi-square test at several parameters",
          "[scenario][markov][property]") {
  for (auto [f, r] : {std::pair{0.1, 5.0}, {0.02, 50.0}, {0.3, 2.0}}) {
    const auto m = scp::make_outage(f, r);
    TransitionCounts total;
    double up = 0.0;
    const int paths = 1000, T = 1000;
    for (int s = 0; s < paths; ++s) {
      auto stream = scp::scenario_stream(11, s);
      const auto p = scp::sample_availability(m, T, stream);
      const auto c = count_transitions(p);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) total.n[a][b] += c.n[a][b];
      }
      up += std::accumulate(p.begin(), p.end(), 0.0);
    }
    INFO("FOR " << f << " MTTR " << r);
    CHECK(transition_chi_square(total, m.repair_prob(), m.failure_prob()) < kChi2Df2At001);
    // Paths start stationary, so the pooled fraction is unbiased for 1 - FOR.
    CHECK(up / (paths * T) == Approx(1 - f).margin(0.01));
  }
}

TEST_CASE("scenario layout follows the system", "[scenario]") {
  auto sys = testing_support::one_generator_system(48, 10, 20, 0.1, 4);
  const auto sc = scp::sample_scenario(sys, 5, 3);
  CHECK(sc.num_units == 1);
  CHECK(sc.profile_choice.empty());
  CHECK(sc.load_factor >= 0.8);
  CHECK(sc.load_factor <= 1.2);
  CHECK(sc.seed_id == 3);

  auto toy = scp::synthetic::deterministic_toy_system();
  const auto d = scp::sample_scenario(toy, 5, 3);
  for (auto k : d.profile_choice) CHECK(k == 0);
  CHECK(d.load_factor == 1.0);
}

TEST_CASE("load factor moments", "[scenario][oracle]") {
  const auto sys = testing_support::one_generator_system(1, 10, 20, 0.1, 4);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += scp::sample_scenario(sys, 99, i).load_factor;
  CHECK(std::abs(sum / n - 1.0) <= 3.0 * (0.4 / std::sqrt(12.0)) / std::sqrt(n));
}

TEST_CASE("profile indices follow their probabilities", "[scenario]") {
  const auto sys = scp::synthetic::weekly_system();
  std::vector<double> counts(4, 0.0);
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto sc = scp::sample_scenario(sys, 1, i);
    for (int d = 0; d < sc.num_days; ++d) counts[sc.profile(0, d)] += 1;
  }
  const double total = 7.0 * n;
  const auto& p = sys.renewable[0].probabilities;
  double chi = 0.0;
  for (int k = 0; k < 4; ++k) chi += std::pow(counts[k] - total * p[k], 2) / (total * p[k]);
  CHECK(chi < 16.266);  // df = 3 at the 0.001 level
}

TEST_CASE("scenarios are replayable by (seed, index) in any order", "[scenario][determinism]") {
  const auto sys = scp::synthetic::toy_system();
  CHECK(scp::sample_scenario(sys, 42, 7) == scp::sample_scenario(sys, 42, 7));
  CHECK_FALSE(scp::sample_scenario(sys, 42, 0) == scp::sample_scenario(sys, 42, 1));
  CHECK_FALSE(scp::sample_scenario(sys, 42, 0) == scp::sample_scenario(sys, 43, 0));
  std::vector<scp::Scenario> forward;
  for (int i = 0; i < 100; ++i) forward.push_back(scp::sample_scenario(sys, 42, i));
  std::vector<int> order(100);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(1));
  for (int i : order) CHECK(scp::sample_scenario(sys, 42, i) == forward[i]);
}

TEST_CASE("availability of distinct units is uncorrelated", "[scenario][property]") {
  const auto sys = scp::synthetic::toy_system();
  const int n = 20000;
  double a = 0, b = 0, ab = 0;
  for (int i = 0; i < n; ++i) {
    const auto sc = scp::sample_scenario(sys, 8, i);
    const double u0 = sc.up(0, 12), u1 = sc.up(1, 12);
    a += u0;
    b += u1;
    ab += u0 * u1;
  }
  a /= n;
  b /= n;
  const double cov = ab / n - a * b;
  const double corr = cov / std::sqrt(a * (1 - a) * b * (1 - b));
  CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
}

TEST_CASE("k-medoids examples", "[scenario][cluster]") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> days(7, std::vector<double>(24));
  for (auto& d : days) {
    for (auto& v : d) v = u(gen);
  }
  auto stream = scp::scenario_stream(1, 0);
  const auto all = scp::cluster_profiles(days, 7, stream);
  for (double p : all.probabilities) CHECK(p == Approx(1.0 / 7));
  CHECK(all.objective == 0.0);

  const auto one = scp::cluster_profiles(days, 1, stream);
  CHECK(one.objective == Approx(best_subset_objective(days, 1)).epsilon(1e-14));

  // Two groups of three around distant centers.
  std::vector<std::vector<double>> grouped;
  for (int g = 0; g < 2; ++g) {
    for (int j = 0; j < 3; ++j) {
      std::vector<double> d(24);
      for (auto& v : d) v = (g == 0 ? 0.1 : 0.9) + 0.02 * (u(gen) - 0.5);
      grouped.push_back(d);
    }
  }
  const auto two = scp::cluster_profiles(grouped, 2, stream);
  CHECK(two.probabilities == std::vector<double>{0.5, 0.5});
  CHECK(two.objective == Approx(best_subset_objective(grouped, 2)).epsilon(1e-14));

  CHECK_THROWS_AS(scp::cluster_profiles(days, 8, stream), scp::ValidationError);
  CHECK_THROWS_AS(scp::cluster_profiles({}, 1, stream), scp::ValidationError);
  days[2][5] = 1.5;
  try {
    scp::cluster_profiles(days, 2, stream);
    FAIL("expected a validation error");
  } catch (const scp::ValidationError& e) {
    CHECK(e.field() == "row 3, column 6");
  }
}

TEST_CASE("PAM output is swap-optimal", "[scenario][cluster][property]") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 8 + trial % 7;
    const int k = 1 + trial % 4;
    std::vector<std::vector<double>> days(n, std::vector<double>(24));
    for (auto& d : days) {
      const double level = u(gen);
      for (auto& v : d) v = std::clamp(level + 0.3 * (u(gen) - 0.5), 0.0, 1.0);
    }
    auto stream = scp::scenario_stream(trial, 0);
    const auto cl = scp::cluster_profiles(days, k, stream);
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dist[i][j] = scp::euclidean(days[i], days[j]);
    }
    for (int p = 0; p < k; ++p) {
      for (int o = 0; o < n; ++o) {
        if (std::find(cl.medoids.begin(), cl.medoids.end(), o) != cl.medoids.end()) continue;
        auto m = cl.medoids;
        m[p] = o;
        CHECK(scp::pam_objective(dist, m) >= cl.objective - 1e-12);
      }
    }
    CHECK(std::accumulate(cl.probabilities.begin(), cl.probabilities.end(), 0.0) ==
          Approx(1.0).epsilon(1e-15));
  }
}
