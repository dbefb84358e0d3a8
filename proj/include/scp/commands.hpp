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

// The command layer behind the `scp` executable. Each command writes its
// artifacts and a manifest, and returns a process exit code; input problems
// surface as ParseError / ValidationError / PartitionError and numerical
// breakdowns as NumericalError (see run_guarded).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scp/csv.hpp"
#include "scp/error.hpp"
#include "scp/manifest.hpp"
#include "scp/model_io.hpp"
#include "scp/reliability.hpp"
#include "scp/scenario.hpp"
#include "scp/sd.hpp"
#include "scp/synthetic.hpp"

namespace scp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  bool normalize_timestamps = false;  // fixed timestamps and zero wall times
  bool quiet = false;
};

struct ClusterOptions {
  std::string input;
  int k = 5;
  std::uint64_t seed = 1;
  std::string out;
};

struct SolveOptions {
  std::string system;
  int batch = 32;
  std::optional<double> rho;
  double r = 0.2;
  std::size_t max_samples = 20000;
  double eue_se_target = 0.25;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  int log_every = 10;
};

struct ValidateOptions {
  std::string system;
  std::string x;
  std::size_t samples = 20000;
  std::uint64_t seed = 2;
  std::string out;
  std::string is_report;  // optional
  int threads = 1;
};

struct ReportOptions {
  std::string run;
  std::string out;
};

struct SynthOptions {
  std::string name;
  std::string out;
};

namespace detail {

inline void log(const CommonOptions& c, const std::string& msg) {
  if (!c.quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ValidationError("out", "cannot create directory '" + dir.string() + "'");
  }
}

inline void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("out", "cannot write '" + path.string() + "'");
  out << text;
}

inline std::string num(double v) { return csv::format_double(v); }

inline std::string x_csv(const SystemModel& sys, const std::vector<double>& x) {
  std::string s = "unit_id,mw\n";
  for (int i = 0; i < sys.num_units(); ++i) s += sys.unit_id(i) + "," + num(x[i]) + "\n";
  return s;
}

// Reads a capacity CSV (unit_id,mw) into system unit order. Units missing
// from the file are an error.
inline std::vector<double> read_x(const SystemModel& sys, const std::string& path) {
  std::istringstream in(csv::read_file(path));
  std::string line;
  std::map<std::string, double> mw;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (csv::trim(line).empty()) continue;
    const auto cells = csv::split(line);
    if (cells.size() != 2) {
      throw ParseError(path + ": row " + std::to_string(lineno) + ": expected unit_id,mw");
    }
    double v;
    if (!csv::parse_double(cells[1], v)) {
      if (lineno == 1) continue;  // header
      throw ParseError(path + ": row " + std::to_string(lineno) + ", column 2: not a number");
    }
    mw[std::string(csv::trim(cells[0]))] = v;
  }
  std::vector<double> x(sys.num_units());
  for (int i = 0; i < sys.num_units(); ++i) {
    const auto it = mw.find(sys.unit_id(i));
    if (it == mw.end()) throw ValidationError(path, "no capacity for unit '" + sys.unit_id(i) + "'");
    x[i] = it->second;
  }
  return x;
}

inline std::string history_csv(const std::vector<SDHistoryRow>& h, bool zero_wall) {
  std::string s =
      "k,samples,gap,gap_relative,objective,model_value,capacity_cost,eue_in_sample,"
      "se_ratio,incumbent_changed,incumbent_index,cuts,duals,lp_solves,wall_seconds\n";
  for (const auto& r : h) {
    s += std::to_string(r.k) + "," + std::to_string(r.samples) + "," + num(r.gap) + "," +
         num(r.gap_relative) + "," + num(r.objective) + "," + num(r.model_value) + "," +
         num(r.capacity_cost) + "," + num(r.eue_in_sample) + "," + num(r.se_ratio) + "," +
         (r.incumbent_changed ? "1" : "0") + "," + std::to_string(r.incumbent_index) + "," +
         std::to_string(r.cuts) + "," + std::to_string(r.duals) + "," +
         std::to_string(r.lp_solves) + "," + num(zero_wall ? 0.0 : r.wall_seconds) + "\n";
  }
  return s;
}

inline std::string shed_by_hour_csv(const ShedDistribution& d) {
  std::string s = "hour,total_mwh,scenario_hours\n";
  for (const auto& b : d.by_hour) {
    s += std::to_string(b.hour) + "," + num(b.total) + "," + std::to_string(b.count) + "\n";
  }
  return s;
}

inline std::string shed_by_total_csv(const ShedDistribution& d) {
  std::string s = "lower_mwh,upper_mwh,scenarios\n";
  for (const auto& b : d.by_total) {
    s += num(b.lower) + "," + num(b.upper) + "," + std::to_string(b.count) + "\n";
  }
  return s;
}

// Header-indexed numeric table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name, const std::string& file) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) return static_cast<int>(c);
    }
    throw ValidationError(file, "missing column '" + name + "'");
  }
};

inline Table read_table(const fs::path& path) {
  if (!fs::exists(path)) throw ValidationError(path.string(), "file not found");
  const std::string text = csv::read_file(path.string());
  Table t;
  const auto eol = text.find('\n');
  const std::string first = text.substr(0, eol);
  for (auto cell : csv::split(first)) t.header.emplace_back(csv::trim(cell));
  t.rows = csv::parse_numeric(eol == std::string::npos ? "" : text.substr(eol + 1),
                              path.string());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r].size() != t.header.size()) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 2) + ": wrong column count");
    }
  }
  return t;
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(csv::read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Mean and 95% half-width of one metric in a report JSON.
inline MetricEstimate metric_from_json(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw ValidationError(path, std::string("missing '") + key + "'");
  MetricEstimate m;
  m.mean = j.at(key).at("mean").get<double>();
  m.half_width = j.at(key).at("ci95_half_width").get<double>();
  return m;
}

}  // namespace detail

inline int cmd_cluster(const ClusterOptions& o, const CommonOptions& c = {}) {
  const auto days = csv::read_numeric(o.input);
  auto stream = scenario_stream(o.seed, 0);
  const Clustering cl = cluster_profiles(days, o.k, stream);
  ProfileLibrary lib = make_profile_library(days, cl);
  lib.source = fs::path(o.input).filename().string();
  lib.source_sha256 = sha256_file(o.input);
  lib.seed = o.seed;
  const fs::path out(o.out);
  const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  detail::ensure_dir(dir);
  detail::write_text(out, lib.to_json().dump(2) + "\n");
  RunManifest m("cluster", c.normalize_timestamps);
  m.set_config({{"k", o.k}, {"seed", o.seed}});
  m.add_input("history", o.input);
  m.add_seed("cluster", o.seed);
  m.add_artifact(out.filename().string());
  m.write(dir);
  detail::log(c, "cluster: " + std::to_string(o.k) + " medoids from " +
                     std::to_string(days.size()) + " days -> " + out.string());
  return kExitOk;
}

inline int cmd_solve(const SolveOptions& o, const CommonOptions& c = {}) {
  const SystemModel sys = load_system(o.system);
  for (const auto& w : sys.warnings) detail::log(c, "warning: " + w);
  SDConfig cfg;
  cfg.batch = o.batch;
  cfg.rho = o.rho;
  cfg.r = o.r;
  cfg.max_samples = o.max_samples;
  cfg.eue_se_target = o.eue_se_target;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.validate();
  if (o.log_every > 0 && !c.quiet) {
    cfg.observer = [&](const SDState& st) {
      if (st.k % o.log_every != 0) return;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "k=%d N=%zu gap=%.3e F=%.6e cuts=%zu duals=%zu", st.k,
                    st.samples, st.gap_history.back(), st.objective_history.back(),
                    st.cuts.size(), st.duals.size());
      detail::log(c, buf);
    };
  }
  const fs::path dir(o.out);
  detail::ensure_dir(dir);
  const SDResult res = run_sd(sys, cfg);

  json config{{"format", 1},
              {"command", "solve"},
              {"system", {{"path", o.system}, {"name", sys.name}}},
              {"sd", config_to_json(cfg, res.rho)}};
  detail::write_text(dir / "config.json", config.dump(2) + "\n");
  write_system(sys, (dir / "system.json").string());
  detail::write_text(dir / "history.csv", detail::history_csv(res.history, c.normalize_timestamps));
  detail::write_text(dir / "x_star.csv", detail::x_csv(sys, res.x_star));
  detail::write_text(dir / "scenarios.csv", "master_seed,first_index,count\n" +
                                                std::to_string(o.seed) + ",0," +
                                                std::to_string(res.samples) + "\n");
  const json result{{"termination", res.termination == SDTermination::kConverged
                                        ? "converged"
                                        : "max_samples"},
                    {"se_target_met", res.se_target_met},
                    {"iterations", res.iterations},
                    {"samples", res.samples},
                    {"objective", res.objective},
                    {"model_value", res.model_value},
                    {"capacity_cost", scp::detail::capacity_cost_at(sys.capacity_cost(), res.x_star)},
                    {"rho", res.rho},
                    {"duals", res.duals},
                    {"lp_solves", res.lp_solves},
                    {"exit_code", res.exit_code()}};
  detail::write_text(dir / "result.json", result.dump(2) + "\n");
  std::vector<std::string> artifacts{"config.json", "system.json", "history.csv",
                                     "x_star.csv",  "scenarios.csv", "result.json"};
  if (res.in_sample) {
    ReliabilityReport is = *res.in_sample;
    is.master_seed = o.seed;
    is.hour_of_day_shed =
        hour_of_day_profile(res.in_sample_traces, is.samples, sys.calendar.hours_per_day);
    detail::write_text(dir / "in_sample_report.json", is.to_json().dump(2) + "\n");
    const auto dist = shed_distribution(res.in_sample_traces, sys.calendar.hours_per_day);
    detail::write_text(dir / "shed_by_hour.csv", detail::shed_by_hour_csv(dist));
    detail::write_text(dir / "shed_by_total.csv", detail::shed_by_total_csv(dist));
    artifacts.insert(artifacts.end(),
                     {"in_sample_report.json", "shed_by_hour.csv", "shed_by_total.csv"});
  }
  RunManifest m("solve", c.normalize_timestamps);
  m.set_config(config);
  m.add_input("system", o.system);
  m.add_seed("training", o.seed);
  for (const auto& a : artifacts) m.add_artifact(a);
  m.write(dir);
  detail::log(c, "solve: " + std::to_string(res.iterations) + " iterations, " +
                     std::to_string(res.samples) + " samples, " +
                     (res.termination == SDTermination::kConverged ? "converged"
                                                                   : "sample budget reached") +
                     (res.se_target_met ? "" : ", EUE standard-error target unmet"));
  return res.exit_code();
}

inline int cmd_validate(const ValidateOptions& o, const CommonOptions& c = {}) {
  const SystemModel sys = load_system(o.system);
  const std::vector<double> x = detail::read_x(sys, o.x);
  if (o.samples < 2) throw ValidationError("samples", "need at least 2 samples");
  if (o.threads < 1) throw ValidationError("threads", "must be >= 1");
  std::optional<json> is_json;
  if (!o.is_report.empty()) {
    is_json = detail::read_json(o.is_report);
    const auto is_seed = is_json->at("seed").at("master_seed").get<std::uint64_t>();
    if (is_seed == o.seed) {
      throw ValidationError("seed", "validation seed equals the in-sample seed " +
                                        std::to_string(is_seed) + "; choose a disjoint seed");
    }
  }
  const fs::path dir(o.out);
  detail::ensure_dir(dir);
  EvaluationRun run;
  const ReliabilityReport oos = validate(sys, x, o.samples, o.seed, o.threads, {}, &run);
  detail::write_text(dir / "oos_report.json", oos.to_json().dump(2) + "\n");
  const auto dist = shed_distribution(run.traces, sys.calendar.hours_per_day);
  detail::write_text(dir / "shed_by_hour.csv", detail::shed_by_hour_csv(dist));
  detail::write_text(dir / "shed_by_total.csv", detail::shed_by_total_csv(dist));
  std::vector<std::string> artifacts{"oos_report.json", "shed_by_hour.csv", "shed_by_total.csv"};
  if (is_json) {
    ReliabilityReport is;
    is.eue = detail::metric_from_json(*is_json, "eue", o.is_report);
    is.lole = detail::metric_from_json(*is_json, "lole", o.is_report);
    const auto cmp = compare_is_oos(is, oos);
    detail::write_text(dir / "comparison.json", cmp.to_json().dump(2) + "\n");
    artifacts.push_back("comparison.json");
  }
  RunManifest m("validate", c.normalize_timestamps);
  m.set_config({{"samples", o.samples}, {"seed", o.seed}, {"threads", o.threads}});
  m.add_input("system", o.system);
  m.add_input("x", o.x);
  if (is_json) m.add_input("in_sample_report", o.is_report);
  m.add_seed("validation", o.seed);
  for (const auto& a : artifacts) m.add_artifact(a);
  m.write(dir);
  char buf[200];
  std::snprintf(buf, sizeof(buf), "validate: EUE %.4g +- %.3g MWh, LOLE %.4g +- %.3g days",
                oos.eue.mean, oos.eue.half_width, oos.lole.mean, oos.lole.half_width);
  detail::log(c, buf);
  return kExitOk;
}

inline int cmd_report(const ReportOptions& o, const CommonOptions& c = {}) {
  const fs::path run(o.run);
  const fs::path hist_path = run / "history.csv";
  if (!fs::exists(hist_path)) {
    throw ValidationError(hist_path.string(), "history file not found");
  }
  const auto hist = detail::read_table(hist_path);
  const SystemModel sys = load_system((run / "system.json").string());
  const auto x = detail::read_x(sys, (run / "x_star.csv").string());
  const fs::path out(o.out);
  detail::ensure_dir(out);
  const std::string hp = hist_path.string();
  const int k = hist.column("k", hp), n = hist.column("samples", hp),
            gap = hist.column("gap", hp), rel = hist.column("gap_relative", hp),
            obj = hist.column("objective", hp), model = hist.column("model_value", hp),
            cost = hist.column("capacity_cost", hp), eue = hist.column("eue_in_sample", hp),
            inc = hist.column("incumbent_changed", hp);
  auto iv = [](double v) { return std::to_string(static_cast<long long>(v)); };
  std::string g = "k,samples,gap,gap_relative\n";
  std::string f = "k,objective,model_value,incumbent_changed\n";
  std::string e = "k,capacity_cost,eue_in_sample,expected_shed_cost\n";
  for (const auto& r : hist.rows) {
    g += iv(r[k]) + "," + iv(r[n]) + "," + detail::num(r[gap]) + "," + detail::num(r[rel]) + "\n";
    f += iv(r[k]) + "," + detail::num(r[obj]) + "," + detail::num(r[model]) + "," + iv(r[inc]) +
         "\n";
    e += iv(r[k]) + "," + detail::num(r[cost]) + "," + detail::num(r[eue]) + "," +
         detail::num(sys.voll * r[eue]) + "\n";
  }
  double cleared[3] = {0, 0, 0}, available[3] = {0, 0, 0};
  for (int i = 0; i < sys.num_units(); ++i) {
    const int cls = i < sys.first_renewable() ? 0 : i < sys.first_storage() ? 1 : 2;
    cleared[cls] += x[i];
    available[cls] += sys.unit_capacity_max(i);
  }
  const char* names[3] = {"conventional", "renewable", "storage"};
  std::string mix = "class,cleared_mw,available_mw\n";
  for (int cls = 0; cls < 3; ++cls) {
    mix += std::string(names[cls]) + "," + detail::num(cleared[cls]) + "," +
           detail::num(available[cls]) + "\n";
  }
  std::string shed = "hour,total_mwh,scenario_hours\n";
  if (fs::exists(run / "shed_by_hour.csv")) {
    const auto t = detail::read_table(run / "shed_by_hour.csv");
    const std::string sp = (run / "shed_by_hour.csv").string();
    const int h = t.column("hour", sp), tot = t.column("total_mwh", sp),
              cnt = t.column("scenario_hours", sp);
    for (const auto& r : t.rows) {
      shed += iv(r[h]) + "," + detail::num(r[tot]) + "," + iv(r[cnt]) + "\n";
    }
  }
  const std::vector<std::pair<std::string, std::string>> files{
      {"gap_history.csv", g},  {"objective_history.csv", f}, {"eue_cost_history.csv", e},
      {"capacity_mix.csv", mix}, {"shed_histogram.csv", shed}};
  RunManifest m("report", c.normalize_timestamps);
  m.set_config({{"run", o.run}});
  m.add_input("history", hp);
  m.add_input("x_star", (run / "x_star.csv").string());
  for (const auto& [name, text] : files) {
    detail::write_text(out / name, text);
    m.add_artifact(name);
  }
  m.write(out);
  detail::log(c, "report: " + std::to_string(files.size()) + " CSV files -> " + out.string());
  return kExitOk;
}

inline SystemModel bundled_system(const std::string& name) {
  if (name == "toy") return synthetic::toy_system();
  if (name == "toy-deterministic") return synthetic::deterministic_toy_system();
  if (name == "synthetic-20") return synthetic::weekly_system();
  throw ValidationError("name", "unknown bundled system '" + name +
                                    "' (toy, toy-deterministic, synthetic-20)");
}

inline int cmd_synth(const SynthOptions& o, const CommonOptions& c = {}) {
  const SystemModel sys = bundled_system(o.name);
  const fs::path out(o.out);
  if (out.has_parent_path()) detail::ensure_dir(out.parent_path());
  write_system(sys, o.out);
  detail::log(c, "synth: " + o.name + " -> " + o.out);
  return kExitOk;
}

// Runs a command, mapping exceptions to exit codes and messages on stderr.
inline int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  } catch (const PartitionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
}

}  // namespace scp::cli
