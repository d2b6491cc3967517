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

#include "qaoa/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qaoa/errors.hpp"
#include "qaoa/simplex.hpp"

namespace qaoa {

namespace {

constexpr double kJitter = 1e-10;
const double kSqrt5 = std::sqrt(5.0);

}  // namespace

std::vector<double> GpHyperparameters::to_log() const {
  std::vector<double> theta;
  for (double l : length_scales) theta.push_back(std::log(l));
  theta.push_back(std::log(signal_variance));
  theta.push_back(std::log(noise_variance));
  return theta;
}

GpHyperparameters GpHyperparameters::from_log(std::span<const double> theta) {
  if (theta.size() < 3) throw ValidationError("log hyperparameter vector too short");
  GpHyperparameters hp;
  for (std::size_t i = 0; i + 2 < theta.size(); ++i) hp.length_scales.push_back(std::exp(theta[i]));
  hp.signal_variance = std::exp(theta[theta.size() - 2]);
  hp.noise_variance = std::exp(theta[theta.size() - 1]);
  return hp;
}

double matern52(double r) { return (1.0 + kSqrt5 * r + 5.0 * r * r / 3.0) * std::exp(-kSqrt5 * r); }

GaussianProcess::GaussianProcess(Eigen::MatrixXd inputs, Eigen::VectorXd targets, GpHyperparameters hyper)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), hyper_(std::move(hyper)) {
  const Eigen::Index n = inputs_.rows();
  if (n == 0 || targets_.size() != n) throw ValidationError("GP needs matching, nonempty inputs and targets");
  if (static_cast<Eigen::Index>(hyper_.length_scales.size()) != inputs_.cols()) {
    throw ValidationError("length-scale count differs from input dimension");
  }
  Eigen::VectorXd inv_length(inputs_.cols());
  for (Eigen::Index k = 0; k < inputs_.cols(); ++k) inv_length(k) = 1.0 / hyper_.length_scales[static_cast<std::size_t>(k)];
  const Eigen::MatrixXd Z = inputs_ * inv_length.asDiagonal();
  const Eigen::VectorXd sq = Z.rowwise().squaredNorm();
  Eigen::MatrixXd r2 = -2.0 * Z * Z.transpose();
  r2.colwise() += sq;
  r2.rowwise() += sq.transpose();
  const Eigen::ArrayXXd r = r2.array().max(0.0).sqrt();
  Eigen::MatrixXd K =
      (hyper_.signal_variance * (1.0 + kSqrt5 * r + (5.0 / 3.0) * r.square()) * (-kSqrt5 * r).exp()).matrix();
  K.diagonal().setConstant(hyper_.signal_variance + hyper_.noise_variance + kJitter);
  chol_.compute(K);
  if (chol_.info() != Eigen::Success) {
    lml_ = -std::numeric_limits<double>::infinity();
    return;
  }
  alpha_ = chol_.solve(targets_);
  const auto &L = chol_.matrixLLT();
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) log_det_half += std::log(L(i, i));
  lml_ = -0.5 * targets_.dot(alpha_) - log_det_half - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  ok_ = std::isfinite(lml_);
}

GpPrediction GaussianProcess::predict(std::span<const double> x) const {
  if (!ok_) throw ValidationError("GP factorization failed");
  const Eigen::Index n = inputs_.rows();
  const Eigen::Index stride = n;
  Eigen::VectorXd k_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double *row = inputs_.data() + i;
    double r2 = 0.0;
    for (std::size_t k = 0; k < hyper_.length_scales.size(); ++k) {
      const double diff = (row[k * stride] - x[k]) / hyper_.length_scales[k];
      r2 += diff * diff;
    }
    k_star(i) = hyper_.signal_variance * matern52(std::sqrt(r2));
  }
  const double mean = k_star.dot(alpha_);
  Eigen::VectorXd v = chol_.matrixL().solve(k_star);
  const double variance = std::max(0.0, hyper_.signal_variance - v.squaredNorm());
  return {mean, variance};
}

GpHyperparameters fit_hyperparameters(const Eigen::MatrixXd &inputs, const Eigen::VectorXd &targets, Rng &rng,
                                      const std::optional<GpHyperparameters> &warm_start,
                                      const GpFitOptions &options) {
  const GpHyperBounds &bounds = options.bounds;
  const std::size_t d = static_cast<std::size_t>(inputs.cols());
  std::vector<double> lo(d + 2);
  std::vector<double> hi(d + 2);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = std::log(bounds.min_length);
    hi[k] = std::log(bounds.max_length);
  }
  lo[d] = std::log(bounds.min_signal);
  hi[d] = std::log(bounds.max_signal);
  lo[d + 1] = std::log(bounds.min_noise);
  hi[d + 1] = std::log(bounds.max_noise);

  auto clamp = [&](std::span<const double> theta) {
    std::vector<double> c(theta.begin(), theta.end());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::clamp(c[k], lo[k], hi[k]);
    return c;
  };
  auto negative_lml = [&](std::span<const double> theta) {
    const auto c = clamp(theta);
    GaussianProcess gp(inputs, targets, GpHyperparameters::from_log(c));
    if (!gp.ok()) return std::numeric_limits<double>::infinity();
    double penalty = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) penalty += std::fabs(theta[k] - c[k]);
    return -gp.log_marginal_likelihood() + penalty;
  };

  // (start, eval cap); the warm start gets the larger cap
  std::vector<std::pair<std::vector<double>, std::size_t>> starts;
  if (warm_start) starts.emplace_back(clamp(warm_start->to_log()), options.warm_evals_per_param * (d + 2));
  for (std::size_t r = 0; r < options.restarts; ++r) {
    std::vector<double> theta(d + 2);
    for (std::size_t k = 0; k < theta.size(); ++k) theta[k] = rng.uniform(lo[k], hi[k]);
    const std::size_t cap = warm_start ? options.restart_evals_per_param : options.warm_evals_per_param;
    starts.emplace_back(std::move(theta), cap * (d + 2));
  }
  if (starts.empty()) throw ValidationError("hyperparameter fit needs a warm start or at least one restart");

  SimplexOptions opt;
  opt.initial_step = 0.5;
  opt.xtol = 1e-3;
  opt.ftol = 1e-6;

  std::vector<double> best_theta = starts.front().first;
  double best = std::numeric_limits<double>::infinity();
  for (const auto &[start, cap] : starts) {
    opt.max_evals = cap;
    auto res = minimize_simplex(negative_lml, start, opt);
    if (res.f < best) {
      best = res.f;
      best_theta = res.x;
    }
  }
  return GpHyperparameters::from_log(clamp(best_theta));
}

double expected_improvement(const GpPrediction &prediction, double best, double xi) {
  const double sigma = std::sqrt(prediction.variance);
  const double improvement = best - prediction.mean - xi;
  if (sigma < 1e-12) return std::max(0.0, improvement);
  const double z = improvement / sigma;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return improvement * cdf + sigma * pdf;
}

}  // namespace qaoa
