// Copyright 2026 The qaoa-exactcover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qaoa-ec: command-line front end for the exact-cover QAOA toolkit.

#include <cstdint>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaoa/errors.hpp"
#include "qaoa/exactcover.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/rng.hpp"

namespace {

using namespace qaoa;

struct ProblemArgs {
  std::string problem;
  std::string instance;
};

void add_problem_options(CLI::App *cmd, ProblemArgs &args, bool instance_only = false) {
  if (!instance_only) cmd->add_option("--problem", args.problem, "Built-in problem A, B, C or D");
  cmd->add_option("--instance", args.instance, "Instance JSON file");
}

ExactCoverInstance load_instance(const ProblemArgs &args) {
  if (!args.problem.empty() && !args.instance.empty()) {
    throw ValidationError("give either --problem or --instance, not both");
  }
  if (!args.instance.empty()) return parse_instance(read_text_file(args.instance));
  if (!args.problem.empty()) return builtin_problem(args.problem);
  throw ValidationError("an instance is required (--problem or --instance)");
}

IsingModel load_model(const ProblemArgs &args) {
  return normalize_integer_spectrum(map_to_ising(load_instance(args)));
}

Shots parse_shots(const std::string &text) {
  if (text == "exact") return kExactShots;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 1) throw ValidationError("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception &) {
    throw ValidationError("--shots must be a positive integer or 'exact'");
  }
}

/// "ideal", "device" (built-in two-qubit defaults) or a noise JSON file.
Backend parse_backend(const std::string &noise) {
  if (noise == "ideal") return Backend::ideal();
  if (noise == "device") return Backend::noisy(NoiseModel::device_defaults());
  return Backend::noisy(parse_noise(read_text_file(noise)));
}

NoiseModel parse_noise_model(const std::string &noise, std::size_t n) {
  if (noise == "ideal") return NoiseModel::ideal(n);
  if (noise == "device") return NoiseModel::device_defaults();
  return parse_noise(read_text_file(noise));
}

int cmd_solve(const ProblemArgs &pa, std::size_t p, const std::string &optimizer, const std::string &shots_text,
              const std::string &noise, std::uint64_t seed, const std::string &out, std::size_t max_calls) {
  const IsingModel model = load_model(pa);
  const Backend backend = parse_backend(noise);
  const Shots shots = parse_shots(shots_text);
  const auto solutions = ground_states(model).states;
  OptimizerConfig config = OptimizerConfig::defaults(parse_optimizer(optimizer));
  if (max_calls > 0) config.max_calls = max_calls;
  config.seed = derive_seed(seed, 1);
  Objective objective = make_qaoa_objective(model, p, backend, shots, derive_seed(seed, 2), solutions);
  const auto start = benchmark_starts(seed, 1, p).front();
  const OptimizationRun run = run_optimizer(objective, start, config);

  nlohmann::ordered_json doc;
  doc["optimizer"] = optimizer;
  doc["p"] = p;
  doc["seed"] = seed;
  doc["rng"] = kRngAlgorithm;
  doc["backend"] = nlohmann::json::parse(backend.descriptor());
  doc["start"] = start;
  doc["calls"] = run.trajectory.size();
  doc["best_angles"] = QaoaAngles::from_flat(run.best_x).flat();
  doc["best_F"] = run.best_F;
  doc["P_solution"] = run.best_p_solution;
  doc["converged"] = run.converged;
  if (run.calls_to_convergence) {
    doc["calls_to_convergence"] = *run.calls_to_convergence;
  } else {
    doc["calls_to_convergence"] = nullptr;
  }
  doc["model"] = nlohmann::json::parse(serialize_model(model));
  write_text_file(std::filesystem::path(out) / "result.json", doc.dump(2) + "\n");
  write_text_file(std::filesystem::path(out) / "trajectory.jsonl", trajectory_jsonl(run));
  std::cout << "best F " << format_double(run.best_F) << ", P_solution " << format_double(run.best_p_solution)
            << ", calls " << run.trajectory.size() << '\n';
  return 0;
}

int cmd_landscape(const ProblemArgs &pa, std::size_t resolution, const std::string &shots_text,
                  const std::string &noise, std::uint64_t seed, const std::string &out) {
  const IsingModel model = load_model(pa);
  const Backend backend = parse_backend(noise);
  const Landscape land = grid_search(model, 1, resolution, backend, parse_shots(shots_text), seed);
  const auto [g, b] = land.argmin();
  const Linecut cut = linecut(land, Axis::Gamma, g);

  const std::filesystem::path dir(out);
  write_text_file(dir / "landscape.csv", landscape_csv(land));
  write_text_file(dir / "linecut.csv", linecut_csv(cut, model.n));
  nlohmann::ordered_json meta;
  meta["resolution"] = resolution;
  meta["seed"] = seed;
  meta["rng"] = kRngAlgorithm;
  meta["backend"] = nlohmann::json::parse(backend.descriptor());
  meta["argmin"] = {{"gamma_index", g}, {"beta_index", b}, {"F", land.F_at(g, b)}};
  meta["linecut"] = {{"axis", "gamma"}, {"index", g}, {"gamma", cut.fixed_angle}};
  write_text_file(dir / "metadata.json", meta.dump(2) + "\n");
  std::cout << "grid minimum F " << format_double(land.F_at(g, b)) << " at gamma index " << g << ", beta index " << b
            << '\n';
  return 0;
}

int cmd_benchmark(const ProblemArgs &pa, std::size_t p, std::size_t runs, const std::string &shots_text,
                  double threshold, const std::string &optimizers, const std::string &noise, std::uint64_t seed,
                  const std::string &out, std::size_t max_calls, std::size_t jobs) {
  const IsingModel model = load_model(pa);
  BenchmarkConfig config;
  config.p = p;
  config.runs = runs;
  config.shots = parse_shots(shots_text);
  config.threshold = threshold;
  config.backend = parse_backend(noise);
  config.base_seed = seed;
  config.jobs = jobs;
  if (max_calls > 0) config.max_calls = max_calls;
  config.optimizers.clear();
  std::stringstream ss(optimizers);
  for (std::string name; std::getline(ss, name, ',');) config.optimizers.push_back(parse_optimizer(name));
  if (config.optimizers.empty()) throw ValidationError("no optimizers given");

  const BenchmarkReport report = run_benchmark(model, config);
  write_benchmark(report, out);
  for (const auto &entry : report.optimizers) {
    const auto &s = entry.stats;
    std::cout << optimizer_name(entry.config.kind) << ": convergence " << format_double(s.convergence_fraction)
              << ", calls " << format_double(s.calls_mean) << " +- " << format_double(s.calls_std) << ", best P "
              << format_double(s.best_p_solution) << '\n';
  }
  return 0;
}

int cmd_predict(const ProblemArgs &pa, std::size_t pmax, const std::string &noise, const std::string &out) {
  const IsingModel model = load_model(pa);
  std::vector<std::size_t> ps;
  for (std::size_t p = 1; p <= pmax; ++p) ps.push_back(p);
  const std::string csv = prediction_csv(predict_and_compare(model, ps, parse_noise_model(noise, model.n)));
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"QAOA exact-cover simulator and optimizer benchmark"};
  app.require_subcommand(1);

  ProblemArgs solve_pa;
  std::size_t solve_p = 1;
  std::string solve_opt = "nm";
  std::string solve_shots = "5000";
  std::string solve_noise = "ideal";
  std::uint64_t solve_seed = 0;
  std::string solve_out = ".";
  std::size_t solve_max_calls = 0;
  auto *solve = app.add_subcommand("solve", "Optimize QAOA angles for one instance");
  add_problem_options(solve, solve_pa);
  solve->add_option("--p", solve_p, "QAOA levels")->check(CLI::PositiveNumber);
  solve->add_option("--optimizer", solve_opt, "nm | cmaes | bgp");
  solve->add_option("--shots", solve_shots, "Shots per evaluation or 'exact'");
  solve->add_option("--noise", solve_noise, "'ideal', 'device' or a noise JSON file");
  solve->add_option("--seed", solve_seed, "Base seed");
  solve->add_option("--out", solve_out, "Output directory");
  solve->add_option("--max-calls", solve_max_calls, "Override the evaluation budget");

  ProblemArgs land_pa;
  std::size_t land_res = 61;
  std::string land_shots = "5000";
  std::string land_noise = "ideal";
  std::uint64_t land_seed = 0;
  std::string land_out = ".";
  auto *land = app.add_subcommand("landscape", "Grid search of the p = 1 cost landscape");
  add_problem_options(land, land_pa);
  land->add_option("--resolution", land_res, "Grid points per axis")->check(CLI::PositiveNumber);
  land->add_option("--shots", land_shots, "Shots per grid point or 'exact'");
  land->add_option("--noise", land_noise, "'ideal', 'device' or a noise JSON file");
  land->add_option("--seed", land_seed, "Base seed");
  land->add_option("--out", land_out, "Output directory");

  ProblemArgs bench_pa;
  std::size_t bench_p = 2;
  std::size_t bench_runs = 200;
  std::string bench_shots = "5000";
  double bench_threshold = -0.95;
  std::string bench_opts = "nm,cmaes,bgp";
  std::string bench_noise = "ideal";
  std::uint64_t bench_seed = 0;
  std::string bench_out = ".";
  std::size_t bench_max_calls = 0;
  std::size_t bench_jobs = 1;
  auto *bench = app.add_subcommand("benchmark", "Random-restart optimizer comparison");
  add_problem_options(bench, bench_pa);
  bench->add_option("--p", bench_p, "QAOA levels")->check(CLI::PositiveNumber);
  bench->add_option("--runs", bench_runs, "Restarts per optimizer")->check(CLI::PositiveNumber);
  bench->add_option("--shots", bench_shots, "Shots per evaluation or 'exact'");
  bench->add_option("--threshold", bench_threshold, "Convergence threshold on F");
  bench->add_option("--optimizers", bench_opts, "Comma-separated list of nm, cmaes, bgp");
  bench->add_option("--noise", bench_noise, "'ideal', 'device' or a noise JSON file");
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("--out", bench_out, "Output directory");
  bench->add_option("--max-calls", bench_max_calls, "Override every optimizer's budget");
  bench->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);

  ProblemArgs pred_pa;
  std::size_t pred_pmax = 3;
  std::string pred_noise = "device";
  std::string pred_out;
  std::uint64_t pred_seed = 0;
  auto *pred = app.add_subcommand("predict", "Gate tallies and fidelity-product predictions per level");
  add_problem_options(pred, pred_pa);
  pred->add_option("--pmax", pred_pmax, "Largest level")->check(CLI::PositiveNumber);
  pred->add_option("--noise", pred_noise, "'ideal', 'device' or a noise JSON file");
  pred->add_option("--out", pred_out, "CSV output file (default stdout)");
  pred->add_option("--seed", pred_seed, "Accepted for uniformity; unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) {
      return cmd_solve(solve_pa, solve_p, solve_opt, solve_shots, solve_noise, solve_seed, solve_out, solve_max_calls);
    }
    if (*land) return cmd_landscape(land_pa, land_res, land_shots, land_noise, land_seed, land_out);
    if (*bench) {
      return cmd_benchmark(bench_pa, bench_p, bench_runs, bench_shots, bench_threshold, bench_opts, bench_noise,
                           bench_seed, bench_out, bench_max_calls, bench_jobs);
    }
    if (*pred) return cmd_predict(pred_pa, pred_pmax, pred_noise, pred_out);
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
