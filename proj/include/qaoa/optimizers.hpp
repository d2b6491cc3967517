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

#ifndef QAOA_OPTIMIZERS_HPP
#define QAOA_OPTIMIZERS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa {

struct ObjectiveValue {
  double F;
  double p_solution = std::numeric_limits<double>::quiet_NaN();
};

/// `call_index` is the 1-based position of the call in the objective's log.
using ObjectiveFn = std::function<ObjectiveValue(std::span<const double> x, std::size_t call_index)>;

struct Evaluation {
  std::size_t call_index;
  std::vector<double> x;
  double F;
  double p_solution;
};

/// Black-box objective that records every call in order.
class Objective {
 public:
  Objective(std::size_t dim, ObjectiveFn fn);

  std::size_t dim() const { return dim_; }
  std::size_t calls() const { return log_.size(); }
  const std::vector<Evaluation> &log() const { return log_; }

  ObjectiveValue operator()(std::span<const double> x);

 private:
  std::size_t dim_;
  ObjectiveFn fn_;
  std::vector<Evaluation> log_;
};

enum class OptimizerKind { NelderMead, CmaEs, BayesGp };

std::string_view optimizer_name(OptimizerKind kind);  // "nm", "cmaes", "bgp"
OptimizerKind parse_optimizer(std::string_view name);

struct NelderMeadOptions {
  double initial_step = std::numbers::pi / 8.0;
  double xtol = 1e-4;
};

struct CmaEsOptions {
  double sigma0 = std::numbers::pi / 4.0;
  double min_sigma = 1e-5;
  std::optional<std::size_t> population;  // default 4 + floor(3 ln d)
};

struct BayesOptOptions {
  std::vector<double> lower;  // default 0 per axis
  std::vector<double> upper;  // default pi per axis
  std::size_t initial_points = 10;
  std::size_t hyper_restarts = 5;
  std::size_t acquisition_samples = 1000;
  std::size_t polish_evals = 60;
  double xi = 0.01;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::NelderMead;
  std::size_t max_calls = 300;
  double threshold = -0.95;
  std::uint64_t seed = 0;
  NelderMeadOptions nm;
  CmaEsOptions cma;
  BayesOptOptions bgp;

  /// Per-kind default budget: 300 for the local methods, 100 for BGP.
  static OptimizerConfig defaults(OptimizerKind kind);
};

struct OptimizationRun {
  std::vector<Evaluation> trajectory;
  std::vector<double> best_x;
  double best_F = std::numeric_limits<double>::infinity();
  double best_p_solution = std::numeric_limits<double>::quiet_NaN();
  std::optional<std::size_t> calls_to_convergence;  // 1-based call index
  bool converged = false;
  bool budget_exhausted = false;
};

/// Rebuilds best value and convergence bookkeeping from a trajectory. Ties on
/// F keep the earliest evaluation.
OptimizationRun summarize_trajectory(std::vector<Evaluation> trajectory, double threshold, bool budget_exhausted);

OptimizationRun nelder_mead(Objective &objective, std::span<const double> start, const OptimizerConfig &config);
OptimizationRun cma_es(Objective &objective, std::span<const double> start, const OptimizerConfig &config);

/// Operates inside the box [lower, upper]. `start`, when given, is the first
/// initial design point; the rest come from a randomly shifted Halton set.
OptimizationRun gp_bayes_opt(Objective &objective, std::optional<std::span<const double>> start,
                             const OptimizerConfig &config);

OptimizationRun run_optimizer(Objective &objective, std::span<const double> start, const OptimizerConfig &config);

}  // namespace qaoa

#endif  // QAOA_OPTIMIZERS_HPP
