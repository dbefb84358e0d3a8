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

// Closed-form synthetic systems shipped under data/. Every number is a
// formula of the unit index, so the systems regenerate bit for bit.

#include <cmath>
#include <string>
#include <vector>

#include "scp/model.hpp"

namespace scp::synthetic {

inline constexpr double kPi = 3.14159265358979323846;

// Hourly load shape in [0,1] with a morning shoulder and an evening peak.
inline double daily_shape(int hour) {
  const double evening = std::exp(-0.5 * std::pow((hour - 18.0) / 2.5, 2));
  const double morning = 0.6 * std::exp(-0.5 * std::pow((hour - 9.0) / 2.0, 2));
  const double night = 0.5 - 0.5 * std::cos(2.0 * kPi * hour / 24.0);
  return std::min(1.0, 0.25 * night + 0.75 * std::max(evening, morning));
}

inline std::vector<double> solar_profile(double scale) {
  std::vector<double> p(24, 0.0);
  for (int h = 6; h <= 18; ++h) p[h] = scale * std::sin(kPi * (h - 6) / 12.0);
  for (double& v : p) v = std::round(v * 1000.0) / 1000.0;
  return p;
}

inline std::vector<double> wind_profile(double level, double swing, double phase) {
  std::vector<double> p(24);
  for (int h = 0; h < 24; ++h) {
    const double v = level + swing * std::cos(2.0 * kPi * (h - phase) / 24.0);
    p[h] = std::round(std::clamp(v, 0.0, 1.0) * 1000.0) / 1000.0;
  }
  return p;
}

// Five units over one day: three conventional (one with a daily fuel
// budget), one solar unit with three profiles and one 4-hour battery.
inline SystemModel toy_system() {
  SystemModel sys;
  sys.name = "toy-5";
  sys.calendar = build_calendar(24, 24, 7, 30);
  for (int h = 0; h < 24; ++h) sys.load.push_back(std::round(60.0 + 60.0 * daily_shape(h)));
  sys.voll = 10000.0;
  const double caps[3] = {60.0, 50.0, 40.0};
  const double bids[3] = {4.0, 6.0, 9.0};
  const double fors[3] = {0.06, 0.08, 0.05};
  const double mttr[3] = {12.0, 8.0, 6.0};
  for (int g = 0; g < 3; ++g) {
    ConventionalUnit u;
    u.id = "gen" + std::to_string(g + 1);
    u.capacity_max = caps[g];
    u.bid = bids[g];
    u.outage = make_outage(fors[g], mttr[g]);
    if (g == 1) u.k_day = 0.5;
    sys.conventional.push_back(u);
  }
  RenewableUnit pv;
  pv.id = "solar1";
  pv.capacity_max = 50.0;
  pv.bid = 3.0;
  pv.outage = make_outage(0.02, 5.0);
  pv.profiles = {solar_profile(0.25), solar_profile(0.55), solar_profile(0.85)};
  pv.probabilities = {0.3, 0.4, 0.3};
  sys.renewable.push_back(pv);
  StorageUnit bat;
  bat.id = "battery1";
  bat.capacity_max = 30.0;
  bat.bid = 5.0;
  bat.outage = make_outage(0.03, 4.0);
  bat.duration_hours = 4.0;
  bat.eta_charge = 0.95;
  bat.eta_discharge = 0.95;
  sys.storage.push_back(bat);
  return sys;
}

// Degenerate randomness on the toy layout: outages with negligible rate,
// a single profile per renewable and a fixed load factor of 1.
inline SystemModel deterministic_toy_system() {
  SystemModel sys = toy_system();
  sys.name = "toy-5-deterministic";
  auto quiet = [](OutageModel& m) { m = make_outage(1e-12, m.mttr_hours); };
  for (auto& u : sys.conventional) quiet(u.outage);
  for (auto& u : sys.renewable) {
    quiet(u.outage);
    u.profiles = {u.profiles[1]};
    u.probabilities = {1.0};
  }
  for (auto& u : sys.storage) quiet(u.outage);
  sys.load_factor_low = 1.0;
  sys.load_factor_high = 1.0;
  return sys;
}

// Twenty units over one week (T = 168): thirteen conventional units, three of
// them fuel limited, two wind and two solar units, and three batteries.
// Peak load is 1000 MW before the load factor.
inline SystemModel weekly_system() {
  SystemModel sys;
  sys.name = "synthetic-20";
  sys.calendar = build_calendar(168, 24, 7, 30);
  for (int d = 0; d < 7; ++d) {
    const double day_scale = d >= 5 ? 0.85 : 1.0 - 0.02 * std::abs(d - 2);
    for (int h = 0; h < 24; ++h) {
      sys.load.push_back(std::round(550.0 + 450.0 * day_scale * daily_shape(h)));
    }
  }
  sys.voll = 100000.0;
  for (int g = 0; g < 13; ++g) {
    ConventionalUnit u;
    u.id = "gen" + std::string(g < 9 ? "0" : "") + std::to_string(g + 1);
    u.capacity_max = 60.0 + 10.0 * ((g * 7) % 11);
    u.bid = std::round((2.0 + 0.9 * g) * 100.0) / 100.0;
    u.outage = make_outage(0.04 + 0.005 * (g % 8), 8.0 + 4.0 * (g % 6));
    if (g == 3) u.k_day = 0.6;
    if (g == 7) u.k_week = 0.5;
    if (g == 11) {
      u.k_day = 0.7;
      u.k_week = 0.55;
    }
    sys.conventional.push_back(u);
  }
  for (int w = 0; w < 2; ++w) {
    RenewableUnit u;
    u.id = "wind" + std::to_string(w + 1);
    u.capacity_max = 150.0;
    u.bid = 2.5 + w;
    u.outage = make_outage(0.03, 12.0);
    u.profiles = {wind_profile(0.15, 0.10, 3.0 + 4 * w), wind_profile(0.35, 0.15, 2.0 + 4 * w),
                  wind_profile(0.55, 0.10, 5.0 + 4 * w), wind_profile(0.75, 0.10, 1.0 + 4 * w)};
    u.probabilities = {0.3, 0.3, 0.25, 0.15};
    sys.renewable.push_back(u);
  }
  for (int s = 0; s < 2; ++s) {
    RenewableUnit u;
    u.id = "solar" + std::to_string(s + 1);
    u.capacity_max = 120.0;
    u.bid = 3.0 + 0.5 * s;
    u.outage = make_outage(0.02, 6.0);
    u.profiles = {solar_profile(0.2), solar_profile(0.5), solar_profile(0.7),
                  solar_profile(0.85)};
    u.probabilities = {0.2, 0.3, 0.3, 0.2};
    sys.renewable.push_back(u);
  }
  for (int s = 0; s < 3; ++s) {
    StorageUnit u;
    u.id = "battery" + std::to_string(s + 1);
    u.capacity_max = 60.0 + 20.0 * s;
    u.bid = 6.0 + s;
    u.outage = make_outage(0.03, 6.0);
    u.duration_hours = 2.0 + 2.0 * s;
    u.eta_charge = 0.92;
    u.eta_discharge = 0.92;
    u.initial_soc_fraction = 0.5;
    sys.storage.push_back(u);
  }
  return sys;
}

}  // namespace scp::synthetic
