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

// scp: capacity procurement by stochastic decomposition.
//
// Every flag can also be set through an environment variable named
// SCP_<COMMAND>_<FLAG> (upper case, dashes as underscores), for example
// SCP_SOLVE_MAX_SAMPLES. Command-line values take precedence.

#include <CLI11.hpp>

#include "scp/commands.hpp"

namespace {

std::string env_name(const std::string& command, std::string flag) {
  for (char& ch : flag) ch = ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
  std::string cmd = command;
  for (char& ch : cmd) ch = static_cast<char>(std::toupper(ch));
  return "SCP_" + cmd + "_" + flag;
}

// Adds --name bound to `target` with the matching environment variable.
template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(app->get_name(), name));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity procurement by stochastic decomposition"};
  app.set_version_flag("--version", scp::kToolVersion);
  app.require_subcommand(1);
  scp::cli::CommonOptions common;
  app.add_flag("--normalize-timestamps", common.normalize_timestamps,
               "Fixed manifest timestamps and zero wall times (byte-stable artifacts)")
      ->envname("SCP_NORMALIZE_TIMESTAMPS");
  app.add_flag("-q,--quiet", common.quiet, "Suppress progress output")->envname("SCP_QUIET");

  scp::cli::ClusterOptions cl;
  auto* cluster = app.add_subcommand("cluster", "Representative days by k-medoids");
  flag(cluster, "input", cl.input, "Historical days CSV (one row per day)")->required();
  flag(cluster, "k", cl.k, "Number of representative days")->capture_default_str();
  flag(cluster, "seed", cl.seed, "Tie-breaking seed")->capture_default_str();
  flag(cluster, "out", cl.out, "Profile library JSON to write")->required();

  scp::cli::SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Clear capacity with stochastic decomposition");
  flag(solve, "system", so.system, "System description JSON")->required();
  flag(solve, "batch", so.batch, "Scenarios added per iteration")->capture_default_str();
  flag(solve, "rho", so.rho, "Proximal penalty (default 1e-2 x median capacity cost)");
  flag(solve, "r", so.r, "Incumbent acceptance ratio in (0,1)")->capture_default_str();
  flag(solve, "max-samples", so.max_samples, "Sample budget")->capture_default_str();
  flag(solve, "eue-se-target", so.eue_se_target, "EUE standard error over mean")
      ->capture_default_str();
  flag(solve, "seed", so.seed, "Training master seed")->capture_default_str();
  flag(solve, "threads", so.threads, "Dispatch worker threads")->capture_default_str();
  flag(solve, "out", so.out, "Run directory")->required();
  flag(solve, "log-every", so.log_every, "Progress line every N iterations (0: off)")
      ->capture_default_str();

  scp::cli::ValidateOptions vo;
  auto* val = app.add_subcommand("validate", "Out-of-sample reliability of a capacity vector");
  flag(val, "system", vo.system, "System description JSON")->required();
  flag(val, "x", vo.x, "Capacity CSV (unit_id,mw)")->required();
  flag(val, "samples", vo.samples, "Validation sample count")->capture_default_str();
  flag(val, "seed", vo.seed, "Validation master seed")->capture_default_str();
  flag(val, "out", vo.out, "Output directory")->required();
  flag(val, "is-report", vo.is_report, "In-sample report JSON to compare against");
  flag(val, "threads", vo.threads, "Dispatch worker threads")->capture_default_str();

  scp::cli::ReportOptions ro;
  auto* report = app.add_subcommand("report", "Plot-data CSVs from a run directory");
  flag(report, "run", ro.run, "Run directory written by solve")->required();
  flag(report, "out", ro.out, "Output directory")->required();

  scp::cli::SynthOptions sy;
  auto* synth = app.add_subcommand("synth", "Write a bundled synthetic system");
  flag(synth, "name", sy.name, "toy, toy-deterministic or synthetic-20")->required();
  flag(synth, "out", sy.out, "System JSON to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? scp::kExitOk : scp::kExitInputError;
  }

  return scp::cli::run_guarded([&] {
    if (cluster->parsed()) return scp::cli::cmd_cluster(cl, common);
    if (solve->parsed()) return scp::cli::cmd_solve(so, common);
    if (val->parsed()) return scp::cli::cmd_validate(vo, common);
    if (report->parsed()) return scp::cli::cmd_report(ro, common);
    return scp::cli::cmd_synth(sy, common);
  });
}
