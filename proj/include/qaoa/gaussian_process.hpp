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

#ifndef QAOA_GAUSSIAN_PROCESS_HPP
#define QAOA_GAUSSIAN_PROCESS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "qaoa/rng.hpp"

namespace qaoa {

/// Matern-5/2 ARD kernel scaled by signal_variance, plus a white-noise term.
struct GpHyperparameters {
  std::vector<double> length_scales;
  double signal_variance = 1.0;
  double noise_variance = 1e-4;

  /// [log l_1..log l_d, log signal_variance, log noise_variance]
  std::vector<double> to_log() const;
  static GpHyperparameters from_log(std::span<const double> theta);
};

/// Box on the log hyperparameters searched by fit_hyperparameters.
struct GpHyperBounds {
  double min_length = 1e-2;
  double max_length = 2e1;
  double min_signal = 1e-2;
  double max_signal = 1e2;
  double min_noise = 1e-6;
  double max_noise = 1.0;
};

double matern52(double scaled_distance);

struct GpPrediction {
  double mean;
  double variance;  // latent function, noise excluded
};

/// Zero-mean GP regression conditioned on rows of `inputs`.
class GaussianProcess {
 public:
  GaussianProcess(Eigen::MatrixXd inputs, Eigen::VectorXd targets, GpHyperparameters hyper);

  bool ok() const { return ok_; }
  double log_marginal_likelihood() const { return lml_; }
  const GpHyperparameters &hyperparameters() const { return hyper_; }
  GpPrediction predict(std::span<const double> x) const;

 private:
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  GpHyperparameters hyper_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
  double lml_ = 0.0;
  bool ok_ = false;
};

struct GpFitOptions {
  std::size_t restarts = 5;
  // Simplex evaluation caps, per log hyperparameter.
  std::size_t warm_evals_per_param = 40;
  std::size_t restart_evals_per_param = 10;
  GpHyperBounds bounds;
};

/// Maximizes the log marginal likelihood with local simplex searches from
/// `options.restarts` random log-uniform points, plus `warm_start` when given.
GpHyperparameters fit_hyperparameters(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &targets, Rng &rng,
                                      const std::optional<GpHyperparameters> &warm_start,
                                      const GpFitOptions &options = {});

/// Expected improvement below `best` for a minimization problem.
double expected_improvement(const GpPrediction &prediction, double best, double xi);

}  // namespace qaoa

#endif  // QAOA_GAUSSIAN_PROCESS_HPP
