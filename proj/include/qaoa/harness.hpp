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

#ifndef QAOA_HARNESS_HPP
#define QAOA_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qaoa/estimator.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/noise.hpp"
#include "qaoa/optimizers.hpp"

namespace qaoa {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// F over flat angles [gammas..., betas...]; call k draws shots with
/// derive_seed(base_seed, k). p_solution sums `solutions`.
Objective make_qaoa_objective(const IsingModel &model, std::size_t p, const Backend &backend, Shots shots,
                              std::uint64_t base_seed, std::set<Selection> solutions);

struct Landscape {
  std::size_t resolution = 0;
  std::size_t num_qubits = 0;
  std::vector<double> gamma_axis;
  std::vector<double> beta_axis;
  std::vector<double> F;                   // F[g * resolution + b]
  std::vector<std::vector<double>> probs;  // probs[state][g * resolution + b]

  double F_at(std::size_t g, std::size_t b) const { return F[g * resolution + b]; }
  /// (gamma index, beta index) of the smallest F; first in row-major order on ties.
  std::pair<std::size_t, std::size_t> argmin() const;
};

/// Evaluates every (gamma, beta) on the half-open grid k pi / resolution.
Landscape grid_search(const IsingModel &model, std::size_t p, std::size_t resolution, const Backend &backend,
                      Shots shots, std::uint64_t seed);

/// `gamma,beta,F,P_<bits>...` with a header row.
std::string landscape_csv(const Landscape &landscape);

enum class Axis { Gamma, Beta };

/// One row or column of a landscape: Axis::Gamma fixes gamma at
/// gamma_axis[index] and sweeps beta; Axis::Beta the reverse.
struct Linecut {
  Axis axis;
  std::size_t index;
  double fixed_angle;
  std::vector<double> angles;
  std::vector<double> F;
  std::vector<std::vector<double>> probs;  // probs[state][k]
};

Linecut linecut(const Landscape &landscape, Axis axis, std::size_t index);
std::string linecut_csv(const Linecut &cut, std::size_t num_qubits);

struct RefinedMinimum {
  std::vector<double> angles;  // wrapped, flat
  CostEstimate estimate;
};

/// Tight simplex polish of F on the exact backend from `start`.
RefinedMinimum refine_minimum(const IsingModel &model, std::span<const double> start, const Backend &backend,
                              double xtol = 1e-10, std::size_t max_calls = 4000);

struct BenchmarkConfig {
  std::size_t p = 2;
  std::vector<OptimizerKind> optimizers = {OptimizerKind::BayesGp, OptimizerKind::NelderMead, OptimizerKind::CmaEs};
  std::size_t runs = 200;
  Shots shots = 5000;
  double threshold = -0.95;
  Backend backend;
  std::uint64_t base_seed = 0;
  std::optional<std::size_t> max_calls;  // overrides the per-kind default
  std::size_t jobs = 1;
};

inline constexpr double kHistogramBinWidth = 0.05;

struct OptimizerStats {
  std::size_t runs = 0;
  std::size_t converged_runs = 0;
  double convergence_fraction = 0.0;
  double calls_mean = 0.0;  // over converged runs
  double calls_std = 0.0;   // sample standard deviation, converged runs
  double best_p_solution = 0.0;
  std::vector<std::size_t> histogram;  // final P_solution, bins of kHistogramBinWidth
  std::vector<double> mean_F;          // per call index, converged runs only
  std::vector<double> mean_p_solution;
  std::vector<std::size_t> mean_support;  // runs contributing at each index
};

/// Aggregates runs; "final" P_solution is the value at each run's best F.
OptimizerStats compute_stats(const std::vector<OptimizationRun> &runs);

struct OptimizerReport {
  OptimizerConfig config;
  std::vector<OptimizationRun> runs;
  OptimizerStats stats;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::set<Selection> solutions;
  std::vector<std::vector<double>> starts;
  std::vector<OptimizerReport> optimizers;
};

/// Starts shared by all optimizers: uniform on [0, pi)^(2p).
std::vector<std::vector<double>> benchmark_starts(std::uint64_t base_seed, std::size_t runs, std::size_t p);

BenchmarkReport run_benchmark(const IsingModel &model, const BenchmarkConfig &config);

/// One JSON object per evaluation: {call_index, angles, F, P_solution}.
std::string trajectory_jsonl(const OptimizationRun &run);
std::string report_json(const BenchmarkReport &report);

/// report.json plus runs/<optimizer>_<run>.jsonl under `dir`.
void write_benchmark(const BenchmarkReport &report, const std::filesystem::path &dir);

struct PredictionRow {
  std::size_t p;
  GateTally tally;
  double predicted_fidelity;
};

/// Gate tallies of the compiled circuit at generic angles for each level
/// count, and the fidelity-product prediction for each.
std::vector<PredictionRow> predict_and_compare(const IsingModel &model, const std::vector<std::size_t> &p_values,
                                               const NoiseModel &noise);
std::string prediction_csv(const std::vector<PredictionRow> &rows);

void write_text_file(const std::filesystem::path &path, const std::string &contents);
std::string read_text_file(const std::filesystem::path &path);

}  // namespace qaoa

#endif  // QAOA_HARNESS_HPP
