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
#include <numeric>
#include <random>
#include <sstream>

#include "scp/dispatch.hpp"
#include "test_support.hpp"

using Catch::Approx;
using namespace testing_support;

namespace {

scp::SystemModel storage_example(bool with_storage) {
  scp::SystemModel sys = one_generator_system(2, 0.0, 5.0);
  sys.load = {0.0, 10.0};
  if (with_storage) {
    scp::StorageUnit s;
    s.id = "s1";
    s.capacity_max = 10;
    s.bid = 1;
    s.outage = outage(0.05, 10);
    s.duration_hours = 1;
    sys.storage.push_back(s);
  }
  return sys;
}

double total_load(const scp::SystemModel& sys, const scp::Scenario& sc) {
  double s = 0.0;
  for (double l : sys.load) s += sc.load_factor * l;
  return s;
}

}  // namespace

TEST_CASE("dispatch LP structure", "[dispatch]") {
  scp::SystemModel sys = one_generator_system(2, 10.0, 20.0);
  const std::vector<double> x{5.0};
  auto lp = scp::build_dispatch(sys, x, all_up_scenario(sys));
  CHECK(lp.num_rows() == 2);
  CHECK(lp.num_cols() == 4);

  sys.storage.push_back({"s", 10, 1, outage(0.05, 10), 2.0, 1.0, 1.0, 0.0});
  const std::vector<double> x2{5.0, 3.0};
  lp = scp::build_dispatch(sys, x2, all_up_scenario(sys));
  CHECK(lp.num_rows() == 4);
  CHECK(lp.num_cols() == 4 + 2 + 2 + 3);
  const scp::DispatchModel model(sys);
  CHECK(lp.upper[model.col_soc(0, 1)] == Approx(6.0));
  CHECK(lp.upper[model.col_soc(0, 0)] == 0.0);

  scp::DispatchOptions opt;
  opt.include_redundant_fuel_rows = true;
  lp = scp::build_dispatch(sys, x2, all_up_scenario(sys), opt);
  CHECK(lp.num_rows() == 4 + 3);  // one day, one week, one month row

  CHECK_THROWS_AS(scp::build_dispatch(sys, x, all_up_scenario(sys)), std::invalid_argument);
}

TEST_CASE("zero capacity sheds the whole load", "[dispatch]") {
  const auto sys = one_generator_system(24, 10.0, 20.0);
  const std::vector<double> x{0.0};
  const auto sc = scp::sample_scenario(sys, 1, 0);
  const auto out = scp::solve_dispatch(sys, x, sc);
  CHECK(out.unserved == Approx(total_load(sys, sc)).margin(1e-9));
  for (int t = 0; t < 24; ++t) CHECK(out.shed[t] == Approx(sc.load_factor * 10.0).margin(1e-9));
}

TEST_CASE("ample always-on capacity sheds nothing", "[dispatch]") {
  const auto sys = one_generator_system(24, 10.0, 20.0);
  const std::vector<double> x{12.0 * 1.2};
  const auto out = scp::solve_dispatch(sys, x, all_up_scenario(sys, 1.2));
  CHECK(out.unserved == Approx(0.0).margin(1e-9));
}

TEST_CASE("storage shifts energy across hours", "[dispatch]") {
  {
    const auto sys = storage_example(true);
    const std::vector<double> x{5.0, 10.0};
    const auto out = scp::solve_dispatch(sys, x, all_up_scenario(sys));
    CHECK(out.unserved == Approx(0.0).margin(1e-9));
    CHECK(out.charge[0] == Approx(5.0).margin(1e-9));
    CHECK(out.discharge[1] == Approx(5.0).margin(1e-9));
    CHECK(oracle_unserved(sys, x, all_up_scenario(sys)) == Approx(0.0).margin(1e-9));
  }
  {
    const auto sys = storage_example(false);
    const std::vector<double> x{5.0};
    const auto out = scp::solve_dispatch(sys, x, all_up_scenario(sys));
    CHECK(out.unserved == Approx(5.0).margin(1e-9));
    CHECK(oracle_unserved(sys, x, all_up_scenario(sys)) == Approx(5.0).margin(1e-9));
  }
}

TEST_CASE("unserved energy matches the equation-level oracle", "[dispatch][oracle]") {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<int> horizon(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const auto sys = random_small_system(gen, horizon(gen), 3, trial % 3 != 0);
    REQUIRE(scp::validate_system(sys).empty());
    const auto x = random_capacity(gen, sys);
    const auto sc = scp::sample_scenario(sys, 1000 + trial, trial);
    const double ref = oracle_unserved(sys, x, sc);
    const auto out = scp::solve_dispatch(sys, x, sc);
    INFO("trial " << trial);
    CHECK(out.unserved == Approx(ref).margin(1e-6));
  }
}

TEST_CASE("cut coefficients: strong and weak duality", "[dispatch]") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto sys = random_small_system(gen, 6, 3, true);
    const scp::DispatchModel model(sys);
    const auto x = random_capacity(gen, sys);
    const auto sc = scp::sample_scenario(sys, 99, trial);
    const auto out = model.solve(x, sc);
    const auto form = model.dual_form(out.dual);
    const auto cut = model.affine(form, sc);
    INFO("trial " << trial);
    CHECK(cut.value(x) == Approx(out.unserved).margin(1e-6));
    CHECK(model.eval(form, sc, x) == Approx(cut.value(x)).margin(1e-9));
    CHECK(scp::eval_dual(out.dual, sc, x, sys) == Approx(out.unserved).margin(1e-6));
    for (int k = 0; k < 20; ++k) {
      const auto x2 = random_capacity(gen, sys);
      const double u2 = model.solve(x2, sc).unserved;
      CHECK(cut.value(x2) <= u2 + 1e-6);
    }
    // The same dual under other scenarios is still a lower bound.
    for (int k = 0; k < 5; ++k) {
      const auto sc2 = scp::sample_scenario(sys, 1234, k);
      CHECK(model.eval(form, sc2, x) <= model.solve(x, sc2).unserved + 1e-6);
    }
  }
}

TEST_CASE("zero dual gives the zero cut", "[dispatch]") {
  const auto sys = storage_example(true);
  const scp::DispatchModel model(sys);
  const std::vector<double> y(model.num_rows(), 0.0);
  const auto cut = scp::cut_affine(y, all_up_scenario(sys), sys);
  CHECK(cut.a == 0.0);
  for (double b : cut.b) CHECK(b == 0.0);
  const std::vector<double> wrong(model.num_rows() + 1, 0.0);
  CHECK_THROWS_AS(scp::cut_affine(wrong, all_up_scenario(sys), sys), std::invalid_argument);
}

TEST_CASE("recourse, monotonicity and convexity", "[dispatch]") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto sys = random_small_system(gen, 6, 3, true);
    const scp::DispatchModel model(sys);
    const auto sc = scp::sample_scenario(sys, 5, trial);
    const auto x1 = random_capacity(gen, sys);
    auto x2 = x1;
    for (int i = 0; i < sys.num_units(); ++i) {
      x2[i] = std::min(sys.unit_capacity_max(i), x1[i] + u(gen) * 20);
    }
    const double u1 = model.solve(x1, sc).unserved;
    const double u2 = model.solve(x2, sc).unserved;
    CHECK(u1 <= total_load(sys, sc) + 1e-9);
    CHECK(u1 >= u2 - 1e-6);
    const auto x3 = random_capacity(gen, sys);
    std::vector<double> mid(x1.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (x1[i] + x3[i]);
    const double um = model.solve(mid, sc).unserved;
    CHECK(um <= 0.5 * u1 + 0.5 * model.solve(x3, sc).unserved + 1e-6);
  }
}

TEST_CASE("storage energy accounting", "[dispatch]") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto sys = random_small_system(gen, 6, 3, true);
    const auto x = random_capacity(gen, sys);
    const auto sc = scp::sample_scenario(sys, 8, trial);
    const auto out = scp::solve_dispatch(sys, x, sc);
    const auto& st = sys.storage[0];
    const double emax = st.duration_hours * x.back();
    const int T = sys.horizon();
    CHECK(out.soc[0] == Approx(0.0).margin(1e-12));
    for (int t = 0; t < T; ++t) {
      const double de = out.soc[t + 1] - out.soc[t];
      CHECK(de == Approx(st.eta_charge * out.charge[t] - out.discharge[t] / st.eta_discharge)
                      .margin(1e-7));
      CHECK(out.soc[t + 1] <= emax + 1e-7);
    }
  }
}

TEST_CASE("nonzero initial state of charge", "[dispatch]") {
  auto sys = storage_example(true);
  sys.storage[0].initial_soc_fraction = 0.5;
  const std::vector<double> x{0.0, 10.0};
  const auto sc = all_up_scenario(sys);
  const auto out = scp::solve_dispatch(sys, x, sc);
  CHECK(out.unserved == Approx(5.0).margin(1e-9));
  CHECK(oracle_unserved(sys, x, sc) == Approx(5.0).margin(1e-9));
  const scp::DispatchModel model(sys);
  CHECK(model.affine(model.dual_form(out.dual), sc).value(x) == Approx(5.0).margin(1e-9));
}

TEST_CASE("greedy screening bound", "[dispatch]") {
  std::mt19937_64 gen(17);
  int zero_certified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto sys = random_small_system(gen, 6, 3, trial % 2 == 0);
    const scp::DispatchModel model(sys);
    auto x = random_capacity(gen, sys);
    if (trial % 4 == 0) x = sys.upper_bounds();
    const auto sc = scp::sample_scenario(sys, 3, trial);
    const double ub = model.shed_upper_bound(x, sc);
    const double exact = model.solve(x, sc).unserved;
    INFO("trial " << trial);
    CHECK(ub >= exact - 1e-7);
    CHECK(ub <= total_load(sys, sc) + 1e-9);
    if (ub == 0.0) {
      ++zero_certified;
      CHECK(exact == Approx(0.0).margin(1e-9));
    }
  }
  CHECK(zero_certified > 0);
}

TEST_CASE("daily fuel budget forces shed", "[dispatch]") {
  // 24 h at 10 MW; one 12 MW unit limited to half its daily energy.
  auto sys = one_generator_system(24, 10.0, 20.0);
  sys.conventional[0].k_day = 0.5;
  const std::vector<double> x{12.0};
  const auto sc = all_up_scenario(sys);
  const auto out = scp::solve_dispatch(sys, x, sc);
  CHECK(out.unserved == Approx(240.0 - 0.5 * 24 * 12).margin(1e-7));
  CHECK(out.binding_fuel_rows == 1);
  const scp::DispatchModel model(sys);
  REQUIRE(model.fuel_rows().size() == 1);
  CHECK(out.dual[model.row_fuel(0)] < -1e-9);
  CHECK(oracle_unserved(sys, x, sc) == Approx(out.unserved).margin(1e-7));

  // K = 1 rows are redundant with the power bounds.
  auto sys1 = one_generator_system(24, 10.0, 20.0);
  scp::DispatchOptions opt;
  opt.include_redundant_fuel_rows = true;
  const auto out1 = scp::solve_dispatch(sys1, x, sc, opt);
  CHECK(out1.unserved == Approx(0.0).margin(1e-9));
  CHECK(out1.binding_fuel_rows == 0);
}

TEST_CASE("warm start reproduces cold solutions", "[dispatch]") {
  std::mt19937_64 gen(19);
  const auto sys = random_small_system(gen, 6, 3, true);
  const scp::DispatchModel model(sys);
  const auto x = random_capacity(gen, sys);
  const auto first = model.solve(x, scp::sample_scenario(sys, 4, 0));
  for (int k = 1; k < 20; ++k) {
    const auto sc = scp::sample_scenario(sys, 4, k);
    const auto warm = model.solve(x, sc, &first.basis);
    const auto cold = model.solve(x, sc);
    CHECK(warm.unserved == Approx(cold.unserved).margin(1e-7));
  }
}

TEST_CASE("dispatch trace CSV", "[dispatch]") {
  const auto sys = storage_example(true);
  const scp::DispatchModel model(sys);
  const std::vector<double> x{5.0, 10.0};
  const auto sc = all_up_scenario(sys);
  const auto out = model.solve(x, sc);
  std::ostringstream os;
  scp::write_dispatch_trace(model, sc, out, os);
  const std::string text = os.str();
  CHECK(text.rfind("hour,load,shed,conventional,renewable,storage_net,soc\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.find("2,10,0,5,0,5,0\n") != std::string::npos);
}
