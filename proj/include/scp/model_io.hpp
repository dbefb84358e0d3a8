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

// System description files (JSON, "format": 1). See docs/system_format.md.

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "scp/csv.hpp"
#include "scp/error.hpp"
#include "scp/model.hpp"

namespace scp {

using json = nlohmann::json;

namespace detail {

template <typename T>
T get_field(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) {
    throw ValidationError(path + "." + key, "missing required field");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(path + "." + key, e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  return get_field<T>(obj, key, path);
}

inline std::vector<double> read_series(const json& node, const std::string& path,
                                       const std::filesystem::path& base) {
  if (node.is_array()) {
    try {
      return node.get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ValidationError(path, e.what());
    }
  }
  if (node.is_object() && node.contains("csv")) {
    const auto file = base / node.at("csv").get<std::string>();
    std::vector<double> out;
    for (const auto& row : csv::read_numeric(file.string())) {
      if (row.size() != 1) {
        throw ParseError(file.string() + ": expected one value per row");
      }
      out.push_back(row[0]);
    }
    return out;
  }
  throw ValidationError(path, "expected an array or {\"csv\": path}");
}

inline OutageModel read_outage(const json& u, const std::string& path) {
  // Derived rates are checked by validate_system, so accept any numbers here.
  return OutageModel{get_field<double>(u, "for", path),
                     get_field<double>(u, "mttr", path)};
}

inline void read_profiles(const json& u, const std::string& path,
                          const std::filesystem::path& base, RenewableUnit& r) {
  if (u.contains("profile_library")) {
    const auto file = base / u.at("profile_library").get<std::string>();
    json lib;
    try {
      lib = json::parse(csv::read_file(file.string()));
    } catch (const json::parse_error& e) {
      throw ParseError(file.string() + ": " + e.what());
    }
    r.profiles = get_field<std::vector<std::vector<double>>>(lib, "medoids",
                                                            file.string());
    r.probabilities =
        get_field<std::vector<double>>(lib, "probabilities", file.string());
    return;
  }
  if (u.contains("profiles_csv")) {
    const auto file = base / u.at("profiles_csv").get<std::string>();
    r.profiles = csv::read_numeric(file.string());
  } else {
    r.profiles =
        get_field<std::vector<std::vector<double>>>(u, "profiles", path);
  }
  r.probabilities = get_field<std::vector<double>>(u, "probabilities", path);
}

}  // namespace detail

// Parses and validates a system description. `base_dir` resolves relative CSV
// paths. Bids above the cap are clipped with a warning in `warnings`.
inline SystemModel parse_system(const std::string& text,
                                const std::filesystem::path& base_dir = ".") {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("system file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("system file: top level must be an object");
  const int format = detail::get_field<int>(doc, "format", "");
  if (format != 1) {
    throw ValidationError("format", "unsupported format " + std::to_string(format));
  }

  SystemModel sys;
  sys.name = detail::get_or<std::string>(doc, "name", "", "");

  const json& cal = doc.contains("calendar") ? doc.at("calendar") : json::object();
  const int T = detail::get_field<int>(cal, "hours", "calendar");
  const int hpd = detail::get_or<int>(cal, "hours_per_day", 24, "calendar");
  const int dpw = detail::get_or<int>(cal, "days_per_week", 7, "calendar");
  const int dpm = detail::get_or<int>(cal, "days_per_month", 30, "calendar");
  sys.calendar = build_calendar(T, hpd, dpw, dpm);

  if (!doc.contains("load")) throw ValidationError("load", "missing required field");
  sys.load = detail::read_series(doc.at("load"), "load", base_dir);
  if (static_cast<int>(sys.load.size()) != T) {
    throw PartitionError("load has " + std::to_string(sys.load.size()) +
                         " hourly values but the calendar covers " +
                         std::to_string(T) + " hours");
  }

  if (doc.contains("economics")) {
    const json& e = doc.at("economics");
    sys.voll = detail::get_or<double>(e, "voll", sys.voll, "economics");
    sys.bid_cap = detail::get_or<double>(e, "bid_cap", sys.bid_cap, "economics");
  }
  if (doc.contains("uncertainty")) {
    const json& u = doc.at("uncertainty");
    sys.load_factor_low =
        detail::get_or<double>(u, "load_factor_low", sys.load_factor_low, "uncertainty");
    sys.load_factor_high = detail::get_or<double>(u, "load_factor_high",
                                                  sys.load_factor_high, "uncertainty");
  }

  auto list = [&](const char* key) {
    return doc.contains(key) ? doc.at(key) : json::array();
  };
  std::size_t idx = 0;
  for (const json& u : list("conventional")) {
    const std::string path = "conventional[" + std::to_string(idx++) + "]";
    ConventionalUnit g;
    g.id = detail::get_field<std::string>(u, "id", path);
    g.capacity_max = detail::get_field<double>(u, "capacity_max", path);
    g.bid = detail::get_field<double>(u, "bid", path);
    g.outage = detail::read_outage(u, path);
    g.k_day = detail::get_or<double>(u, "k_day", 1.0, path);
    g.k_week = detail::get_or<double>(u, "k_week", 1.0, path);
    g.k_month = detail::get_or<double>(u, "k_month", 1.0, path);
    sys.conventional.push_back(std::move(g));
  }
  idx = 0;
  for (const json& u : list("renewable")) {
    const std::string path = "renewable[" + std::to_string(idx++) + "]";
    RenewableUnit r;
    r.id = detail::get_field<std::string>(u, "id", path);
    r.capacity_max = detail::get_field<double>(u, "capacity_max", path);
    r.bid = detail::get_field<double>(u, "bid", path);
    r.outage = detail::read_outage(u, path);
    detail::read_profiles(u, path, base_dir, r);
    sys.renewable.push_back(std::move(r));
  }
  idx = 0;
  for (const json& u : list("storage")) {
    const std::string path = "storage[" + std::to_string(idx++) + "]";
    StorageUnit s;
    s.id = detail::get_field<std::string>(u, "id", path);
    s.capacity_max = detail::get_field<double>(u, "capacity_max", path);
    s.bid = detail::get_field<double>(u, "bid", path);
    s.outage = detail::read_outage(u, path);
    s.duration_hours = detail::get_field<double>(u, "duration", path);
    s.eta_charge = detail::get_or<double>(u, "eta_charge", 1.0, path);
    s.eta_discharge = detail::get_or<double>(u, "eta_discharge", 1.0, path);
    s.initial_soc_fraction =
        detail::get_or<double>(u, "initial_soc_fraction", 0.0, path);
    sys.storage.push_back(std::move(s));
  }
  idx = 0;
  for (const json& c : list("constraints")) {
    const std::string path = "constraints[" + std::to_string(idx++) + "]";
    CapacityConstraint con;
    con.coefficients =
        detail::get_field<std::map<std::string, double>>(c, "coefficients", path);
    con.rhs = detail::get_field<double>(c, "rhs", path);
    sys.constraints.push_back(std::move(con));
  }

  clip_bids(sys);
  const auto violations = validate_system(sys);
  if (!violations.empty()) {
    throw ValidationError(violations.front().field, violations.front().message);
  }
  return sys;
}

inline SystemModel load_system(const std::string& path) {
  const std::string text = csv::read_file(path);
  return parse_system(text, std::filesystem::path(path).parent_path());
}

// Inline JSON form of a system (every series embedded).
inline json system_to_json(const SystemModel& sys) {
  json doc;
  doc["format"] = 1;
  doc["name"] = sys.name;
  doc["calendar"] = {{"hours", sys.calendar.horizon_hours},
                     {"hours_per_day", sys.calendar.hours_per_day},
                     {"days_per_week", sys.calendar.days_per_week},
                     {"days_per_month", sys.calendar.days_per_month}};
  doc["load"] = sys.load;
  doc["economics"] = {{"voll", sys.voll}, {"bid_cap", sys.bid_cap}};
  doc["uncertainty"] = {{"load_factor_low", sys.load_factor_low},
                        {"load_factor_high", sys.load_factor_high}};
  doc["conventional"] = json::array();
  for (const auto& g : sys.conventional) {
    doc["conventional"].push_back({{"id", g.id},
                                   {"capacity_max", g.capacity_max},
                                   {"bid", g.bid},
                                   {"for", g.outage.forced_outage_rate},
                                   {"mttr", g.outage.mttr_hours},
                                   {"k_day", g.k_day},
                                   {"k_week", g.k_week},
                                   {"k_month", g.k_month}});
  }
  doc["renewable"] = json::array();
  for (const auto& r : sys.renewable) {
    doc["renewable"].push_back({{"id", r.id},
                                {"capacity_max", r.capacity_max},
                                {"bid", r.bid},
                                {"for", r.outage.forced_outage_rate},
                                {"mttr", r.outage.mttr_hours},
                                {"profiles", r.profiles},
                                {"probabilities", r.probabilities}});
  }
  doc["storage"] = json::array();
  for (const auto& s : sys.storage) {
    doc["storage"].push_back({{"id", s.id},
                              {"capacity_max", s.capacity_max},
                              {"bid", s.bid},
                              {"for", s.outage.forced_outage_rate},
                              {"mttr", s.outage.mttr_hours},
                              {"duration", s.duration_hours},
                              {"eta_charge", s.eta_charge},
                              {"eta_discharge", s.eta_discharge},
                              {"initial_soc_fraction", s.initial_soc_fraction}});
  }
  doc["constraints"] = json::array();
  for (const auto& c : sys.constraints) {
    doc["constraints"].push_back({{"coefficients", c.coefficients}, {"rhs", c.rhs}});
  }
  return doc;
}

inline void write_system(const SystemModel& sys, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << system_to_json(sys).dump(1) << "\n";
}

}  // namespace scp
