// Copyright 2026 The domset Authors.
//
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

#include "domset/cli.h"

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "domset/clustering.h"
#include "domset/dynamics.h"
#include "domset/equilibria.h"
#include "domset/hypergraph.h"
#include "domset/io.h"

namespace domset {

namespace {

struct ClusterOptions {
  std::string input;
  std::string format;
  std::string mode = "peel";
  double tol = 1e-10;
  int max_iter = 100000;
  double support_eps = kDefaultSupportEps;
  int min_size = 1;
  double min_cohesiveness = 0.0;
  int restarts = 0;
  std::string output;
  std::string trajectory;
  bool strict = false;
};

struct AnalyzeOptions {
  std::string payoff;
  std::string format;
  int max_n = kDefaultEnumerationCap;
  double tol = kDefaultClassificationTol;
  std::string output;
};

struct SimulateOptions {
  std::string payoff;
  std::string format;
  std::string x0 = "barycenter";
  std::string dynamics = "discrete";
  double dt = 0.01;
  int steps = 100000;
  double tol = 1e-10;
  int record_every = 1;
  std::string trajectory;
  std::string output;
  bool strict = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string resolve_format(const std::string& requested,
                           const std::string& path) {
  if (!requested.empty()) return requested;
  const bool mtx = path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0;
  return mtx ? "mtx" : "csv";
}

Eigen::MatrixXd load_matrix(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  return format == "mtx" ? parse_matrix_market(text) : parse_dense_csv(text);
}

void publish(const std::string& json, const std::string& output,
             std::ostream& out) {
  if (output.empty()) {
    out << json;
  } else {
    write_file(output, json);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

Trajectory concatenate(const std::vector<Trajectory>& parts) {
  Trajectory all;
  for (const Trajectory& t : parts) detail::append_trajectory(all, t);
  return all;
}

ClusteringConfig clustering_config(const ClusterOptions& o) {
  ClusteringConfig cfg;
  cfg.dynamics.tol_convergence = o.tol;
  cfg.dynamics.max_iters = o.max_iter;
  cfg.support_eps = o.support_eps;
  cfg.min_size = o.min_size;
  cfg.min_cohesiveness = o.min_cohesiveness;
  cfg.restarts = o.restarts;
  cfg.keep_trajectories = !o.trajectory.empty();
  return cfg;
}

RunManifest clustering_manifest(const std::string& command,
                                const ClusterOptions& o,
                                const std::string& format) {
  RunManifest m;
  m.command = command;
  m.input_path = o.input;
  m.input_format = format;
  m.version = kToolVersion;
  m.config = {{"mode", o.mode},
              {"dynamics", std::string("discrete")},
              {"tol", o.tol},
              {"max_iter", std::int64_t{o.max_iter}},
              {"support_eps", o.support_eps},
              {"min_size", std::int64_t{o.min_size}},
              {"min_cohesiveness", o.min_cohesiveness}};
  if (o.mode == "overlap") {
    m.config.emplace_back("restarts", std::int64_t{o.restarts});
  }
  return m;
}

int finish_clustering(const ClusteringResult& result, RunManifest manifest,
                      const ClusterOptions& o,
                      std::chrono::steady_clock::time_point start,
                      std::ostream& out, std::ostream& err) {
  if (!o.trajectory.empty()) {
    write_file(o.trajectory, emit_trajectory_csv(concatenate(result.trajectories)));
  }
  manifest.shift_applied = result.shift_applied;
  manifest.duration_seconds = seconds_since(start);
  publish(emit_result(result, manifest), o.output, out);
  if (!result.converged) {
    err << "warning: replicator dynamics did not converge within "
        << o.max_iter << " iterations\n";
    if (o.strict) return kExitNotConverged;
  }
  return kExitOk;
}

int run_cluster(const ClusterOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string format = resolve_format(o.format, o.input);
  const AffinityMatrix W = normalize_affinities(load_matrix(o.input, format));
  if (W.shift() != 0.0) {
    err << "note: negative affinities shifted by " << format_real(W.shift())
        << " off the diagonal\n";
  }
  const ClusteringConfig cfg = clustering_config(o);
  const ClusteringResult result = o.mode == "overlap"
                                      ? enumerate_overlapping(W, cfg)
                                      : peel_partition(W, cfg);
  return finish_clustering(result, clustering_manifest("cluster", o, format), o,
                           start, out, err);
}

int run_hypercluster(const ClusterOptions& o, std::ostream& out,
                     std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const AffinityTensor T = parse_hyperedges(read_file(o.input));
  const ClusteringResult result = peel_hyper_partition(T, clustering_config(o));
  RunManifest manifest = clustering_manifest("hypercluster", o, "hyperedges");
  manifest.config.emplace_back("arity", std::int64_t{T.arity()});
  return finish_clustering(result, std::move(manifest), o, start, out, err);
}

int run_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const std::string format = resolve_format(o.format, o.payoff);
  const PayoffMatrix A(load_matrix(o.payoff, format));
  const CandidateSet candidates = enumerate_candidates(A, o.max_n, o.tol);
  RunManifest m;
  m.command = "game analyze";
  m.input_path = o.payoff;
  m.input_format = format;
  m.version = kToolVersion;
  m.config = {{"max_n", std::int64_t{o.max_n}}, {"tol", o.tol}};
  m.duration_seconds = seconds_since(start);
  publish(emit_result(candidates, m), o.output, out);
  return kExitOk;
}

int run_simulate(const SimulateOptions& o, std::ostream& out,
                 std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string format = resolve_format(o.format, o.payoff);
  const PayoffMatrix A(load_matrix(o.payoff, format));
  const SimplexPoint x0 = o.x0 == "barycenter"
                              ? SimplexPoint::barycenter(A.size())
                              : parse_state(read_file(o.x0));
  DynamicsConfig cfg;
  cfg.mode = o.dynamics == "continuous" ? DynamicsMode::kContinuous
                                        : DynamicsMode::kDiscrete;
  cfg.dt = o.dt;
  cfg.max_iters = o.steps;
  cfg.tol_convergence = o.tol;
  cfg.record_every = o.record_every;
  const Trajectory traj = run(A, x0, cfg);
  write_file(o.trajectory, emit_trajectory_csv(traj));

  RunManifest m;
  m.command = "game simulate";
  m.input_path = o.payoff;
  m.input_format = format;
  m.version = kToolVersion;
  m.config = {{"x0", o.x0},
              {"dynamics", o.dynamics},
              {"tol", o.tol},
              {"steps", std::int64_t{o.steps}},
              {"record_every", std::int64_t{o.record_every}}};
  if (cfg.mode == DynamicsMode::kContinuous) m.config.emplace_back("dt", o.dt);
  m.shift_applied = traj.shift_applied;
  m.duration_seconds = seconds_since(start);
  publish(emit_result(traj, m), o.output, out);
  if (!traj.converged) {
    err << "warning: dynamics did not converge within " << o.steps
        << " steps\n";
    if (o.strict) return kExitNotConverged;
  }
  return kExitOk;
}

void add_cluster_flags(CLI::App* cmd, ClusterOptions& o, bool with_format) {
  cmd->add_option("--input", o.input, "Input file")->required();
  if (with_format) {
    cmd->add_option("--format", o.format, "csv or mtx (default: by extension)")
        ->check(CLI::IsMember({"csv", "mtx"}));
    cmd->add_option("--mode", o.mode, "peel or overlap")
        ->check(CLI::IsMember({"peel", "overlap"}));
    cmd->add_option("--restarts", o.restarts,
                    "Overlap mode restarts (default: one per object)")
        ->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--tol", o.tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", o.max_iter, "Iteration cap per extraction")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--support-eps", o.support_eps,
                  "Support threshold, relative to 1/n");
  cmd->add_option("--min-size", o.min_size, "Smallest accepted cluster");
  cmd->add_option("--min-cohesiveness", o.min_cohesiveness,
                  "Smallest accepted cohesiveness");
  cmd->add_option("--output", o.output, "Write JSON here instead of stdout");
  cmd->add_option("--trajectory", o.trajectory,
                  "Write the extraction trajectories as CSV");
  cmd->add_flag("--strict", o.strict, "Exit with status 2 on non-convergence");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Replicator dynamics, equilibrium analysis and dominant-set "
               "clustering",
               "domset"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ClusterOptions cluster_opts;
  CLI::App* cluster = app.add_subcommand("cluster", "Dominant-set clustering");
  add_cluster_flags(cluster, cluster_opts, true);

  ClusterOptions hyper_opts;
  CLI::App* hyper = app.add_subcommand(
      "hypercluster", "Peel-off clustering of a k-uniform hypergraph");
  add_cluster_flags(hyper, hyper_opts, false);

  CLI::App* game = app.add_subcommand("game", "Game analysis");
  game->require_subcommand(1);

  AnalyzeOptions analyze_opts;
  CLI::App* analyze =
      game->add_subcommand("analyze", "Enumerate and classify equilibria");
  analyze->add_option("--payoff", analyze_opts.payoff, "Payoff matrix file")
      ->required();
  analyze->add_option("--format", analyze_opts.format, "csv or mtx")
      ->check(CLI::IsMember({"csv", "mtx"}));
  analyze->add_option("--max-n", analyze_opts.max_n, "Enumeration cap");
  analyze->add_option("--tol", analyze_opts.tol, "Classification tolerance")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--output", analyze_opts.output, "Write JSON here");

  SimulateOptions sim_opts;
  CLI::App* simulate =
      game->add_subcommand("simulate", "Run the replicator dynamics");
  simulate->add_option("--payoff", sim_opts.payoff, "Payoff matrix file")
      ->required();
  simulate->add_option("--format", sim_opts.format, "csv or mtx")
      ->check(CLI::IsMember({"csv", "mtx"}));
  simulate->add_option("--x0", sim_opts.x0, "'barycenter' or a weights file");
  simulate->add_option("--dynamics", sim_opts.dynamics, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}));
  simulate->add_option("--dt", sim_opts.dt, "RK4 step (continuous)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--steps", sim_opts.steps, "Step cap")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--tol", sim_opts.tol, "Convergence tolerance")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--record-every", sim_opts.record_every,
                       "Record every k-th state (0: endpoints only)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--trajectory", sim_opts.trajectory, "CSV output")
      ->required();
  simulate->add_option("--output", sim_opts.output, "Write JSON here");
  simulate->add_flag("--strict", sim_opts.strict,
                     "Exit with status 2 on non-convergence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (cluster->parsed()) return run_cluster(cluster_opts, out, err);
    if (hyper->parsed()) return run_hypercluster(hyper_opts, out, err);
    if (analyze->parsed()) return run_analyze(analyze_opts, out);
    return run_simulate(sim_opts, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace domset
