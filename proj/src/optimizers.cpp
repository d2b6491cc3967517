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

#include "qaoa/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qaoa/errors.hpp"
#include "qaoa/gaussian_process.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/simplex.hpp"

namespace qaoa {

namespace {

struct BudgetExhausted {};

// Call counter local to one run; throws BudgetExhausted instead of exceeding
// the budget.
class Budgeted {
 public:
  Budgeted(Objective &objective, std::size_t max_calls)
      : objective_(objective), first_(objective.calls()), max_calls_(max_calls) {}

  double operator()(std::span<const double> x) {
    if (used() >= max_calls_) throw BudgetExhausted{};
    return objective_(x).F;
  }
  std::size_t used() const { return objective_.calls() - first_; }
  std::size_t remaining() const { return max_calls_ - used(); }

  OptimizationRun finish(double threshold, bool exhausted) const {
    std::vector<Evaluation> trajectory(objective_.log().begin() + static_cast<std::ptrdiff_t>(first_),
                                       objective_.log().end());
    return summarize_trajectory(std::move(trajectory), threshold, exhausted);
  }

 private:
  Objective &objective_;
  std::size_t first_;
  std::size_t max_calls_;
};

void check_config(const Objective &objective, const OptimizerConfig &config) {
  if (objective.dim() == 0) throw ValidationError("objective dimension must be >= 1");
  if (config.max_calls < objective.dim() + 1) throw ValidationError("max_calls must be at least dimension + 1");
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

}  // namespace

Objective::Objective(std::size_t dim, ObjectiveFn fn) : dim_(dim), fn_(std::move(fn)) {
  if (!fn_) throw ValidationError("objective function is empty");
}

ObjectiveValue Objective::operator()(std::span<const double> x) {
  if (x.size() != dim_) throw ValidationError("objective called with wrong dimension");
  const std::size_t call_index = log_.size() + 1;
  ObjectiveValue v = fn_(x, call_index);
  log_.push_back({call_index, std::vector<double>(x.begin(), x.end()), v.F, v.p_solution});
  return v;
}

std::string_view optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::NelderMead: return "nm";
    case OptimizerKind::CmaEs: return "cmaes";
    case OptimizerKind::BayesGp: return "bgp";
  }
  return "?";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "nm") return OptimizerKind::NelderMead;
  if (name == "cmaes") return OptimizerKind::CmaEs;
  if (name == "bgp") return OptimizerKind::BayesGp;
  throw ValidationError("unknown optimizer '" + std::string(name) + "'");
}

OptimizerConfig OptimizerConfig::defaults(OptimizerKind kind) {
  OptimizerConfig c;
  c.kind = kind;
  c.max_calls = kind == OptimizerKind::BayesGp ? 100 : 300;
  return c;
}

OptimizationRun summarize_trajectory(std::vector<Evaluation> trajectory, double threshold, bool budget_exhausted) {
  OptimizationRun run;
  run.budget_exhausted = budget_exhausted;
  for (const auto &e : trajectory) {
    if (e.F < run.best_F) {
      run.best_F = e.F;
      run.best_x = e.x;
      run.best_p_solution = e.p_solution;
    }
    if (!run.converged && e.F < threshold) {
      run.converged = true;
      run.calls_to_convergence = e.call_index - trajectory.front().call_index + 1;
    }
  }
  run.trajectory = std::move(trajectory);
  return run;
}

OptimizationRun nelder_mead(Objective &objective, std::span<const double> start, const OptimizerConfig &config) {
  check_config(objective, config);
  if (start.size() != objective.dim()) throw ValidationError("start point has wrong dimension");
  Budgeted f(objective, config.max_calls);
  SimplexOptions opt;
  opt.initial_step = config.nm.initial_step;
  opt.xtol = config.nm.xtol;
  opt.max_evals = config.max_calls;
  bool exhausted = false;
  try {
    auto res = minimize_simplex([&](std::span<const double> x) { return f(x); }, start, opt);
    exhausted = !res.converged;
  } catch (const BudgetExhausted &) {
    exhausted = true;
  }
  return f.finish(config.threshold, exhausted);
}

OptimizationRun cma_es(Objective &objective, std::span<const double> start, const OptimizerConfig &config) {
  check_config(objective, config);
  const std::size_t dim = objective.dim();
  if (start.size() != dim) throw ValidationError("start point has wrong dimension");
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const double N = static_cast<double>(dim);
  const std::size_t lambda =
      config.cma.population.value_or(4 + static_cast<std::size_t>(std::floor(3.0 * std::log(N))));
  if (lambda < 2) throw ValidationError("CMA-ES population must be >= 2");
  const std::size_t mu = lambda / 2;
  VectorXd weights(static_cast<Eigen::Index>(mu));
  for (std::size_t i = 0; i < mu; ++i) {
    weights(static_cast<Eigen::Index>(i)) = std::log(static_cast<double>(mu) + 0.5) - std::log(static_cast<double>(i + 1));
  }
  weights /= weights.sum();
  const double mueff = 1.0 / weights.squaredNorm();

  const double cc = (4.0 + mueff / N) / (N + 4.0 + 2.0 * mueff / N);
  const double cs = (mueff + 2.0) / (N + mueff + 5.0);
  const double c1 = 2.0 / ((N + 1.3) * (N + 1.3) + mueff);
  const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((N + 2.0) * (N + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (N + 1.0)) - 1.0) + cs;
  const double chi_n = std::sqrt(N) * (1.0 - 1.0 / (4.0 * N) + 1.0 / (21.0 * N * N));

  const auto d = static_cast<Eigen::Index>(dim);
  VectorXd mean = Eigen::Map<const VectorXd>(start.data(), d);
  double sigma = config.cma.sigma0;
  MatrixXd C = MatrixXd::Identity(d, d);
  MatrixXd B = MatrixXd::Identity(d, d);
  VectorXd D = VectorXd::Ones(d);
  VectorXd pc = VectorXd::Zero(d);
  VectorXd ps = VectorXd::Zero(d);

  Rng rng(config.seed);
  Budgeted f(objective, config.max_calls);
  bool exhausted = false;
  try {
    for (std::size_t generation = 0;; ++generation) {
      std::vector<VectorXd> xs(lambda);
      std::vector<double> fs(lambda);
      for (std::size_t k = 0; k < lambda; ++k) {
        VectorXd z(d);
        for (Eigen::Index i = 0; i < d; ++i) z(i) = rng.normal();
        xs[k] = mean + sigma * (B * D.cwiseProduct(z));
        fs[k] = f(std::span<const double>(xs[k].data(), dim));
      }
      std::vector<std::size_t> order(lambda);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });

      const VectorXd old_mean = mean;
      mean.setZero();
      for (std::size_t i = 0; i < mu; ++i) mean += weights(static_cast<Eigen::Index>(i)) * xs[order[i]];
      const VectorXd y_w = (mean - old_mean) / sigma;

      const MatrixXd c_inv_sqrt = B * D.cwiseInverse().asDiagonal() * B.transpose();
      ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * (c_inv_sqrt * y_w);
      const double ps_norm = ps.norm();
      const double decay = 1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(generation + 1));
      const bool hsig = ps_norm / std::sqrt(decay) / chi_n < 1.4 + 2.0 / (N + 1.0);
      pc = (1.0 - cc) * pc + (hsig ? std::sqrt(cc * (2.0 - cc) * mueff) : 0.0) * y_w;

      MatrixXd rank_mu = MatrixXd::Zero(d, d);
      for (std::size_t i = 0; i < mu; ++i) {
        const VectorXd a = (xs[order[i]] - old_mean) / sigma;
        rank_mu += weights(static_cast<Eigen::Index>(i)) * a * a.transpose();
      }
      C = (1.0 - c1 - cmu) * C + c1 * (pc * pc.transpose() + (hsig ? 0.0 : cc * (2.0 - cc)) * C) + cmu * rank_mu;
      sigma *= std::exp((cs / damps) * (ps_norm / chi_n - 1.0));

      C = 0.5 * (C + C.transpose());
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
      B = eig.eigenvectors();
      D = eig.eigenvalues().cwiseMax(1e-20).cwiseSqrt();

      if (sigma < config.cma.min_sigma) break;
    }
  } catch (const BudgetExhausted &) {
    exhausted = true;
  }
  return f.finish(config.threshold, exhausted);
}

OptimizationRun gp_bayes_opt(Objective &objective, std::optional<std::span<const double>> start,
                             const OptimizerConfig &config) {
  check_config(objective, config);
  const std::size_t dim = objective.dim();
  if (dim > 10) throw ValidationError("BGP supports at most 10 dimensions");
  if (dim > std::size(kPrimes)) throw ValidationError("too many dimensions for the Halton design");
  const auto &opt = config.bgp;
  std::vector<double> lower = opt.lower.empty() ? std::vector<double>(dim, 0.0) : opt.lower;
  std::vector<double> upper = opt.upper.empty() ? std::vector<double>(dim, std::numbers::pi) : opt.upper;
  if (lower.size() != dim || upper.size() != dim) throw ValidationError("BGP bounds have wrong dimension");
  for (std::size_t k = 0; k < dim; ++k) {
    if (!(upper[k] > lower[k])) throw ValidationError("BGP bounds must satisfy lower < upper");
  }
  if (start && start->size() != dim) throw ValidationError("start point has wrong dimension");

  Rng rng(config.seed);
  Budgeted f(objective, config.max_calls);
  std::vector<std::vector<double>> xs;  // unit-cube coordinates
  std::vector<double> ys;

  auto to_box = [&](const std::vector<double> &u) {
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = lower[k] + u[k] * (upper[k] - lower[k]);
    return x;
  };
  auto evaluate = [&](std::vector<double> u, std::optional<std::vector<double>> x = std::nullopt) {
    const double y = f(x ? *x : to_box(u));
    xs.push_back(std::move(u));
    ys.push_back(y);
  };

  bool exhausted = false;
  try {
    std::vector<double> shift(dim);
    for (auto &s : shift) s = rng.uniform();
    if (start) {
      std::vector<double> u(dim);
      std::vector<double> x(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        x[k] = std::clamp((*start)[k], lower[k], upper[k]);
        u[k] = (x[k] - lower[k]) / (upper[k] - lower[k]);
      }
      evaluate(std::move(u), std::move(x));
    }
    for (std::uint64_t i = 1; xs.size() < std::max<std::size_t>(opt.initial_points, 1); ++i) {
      std::vector<double> u(dim);
      for (std::size_t k = 0; k < dim; ++k) u[k] = std::fmod(radical_inverse(i, kPrimes[k]) + shift[k], 1.0);
      evaluate(std::move(u));
    }

    std::optional<GpHyperparameters> warm;
    while (f.remaining() > 0) {
      const auto n = static_cast<Eigen::Index>(xs.size());
      Eigen::MatrixXd X(n, static_cast<Eigen::Index>(dim));
      Eigen::VectorXd y(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) X(i, static_cast<Eigen::Index>(k)) = xs[static_cast<std::size_t>(i)][k];
        y(i) = ys[static_cast<std::size_t>(i)];
      }
      const double y_mean = y.mean();
      double y_std = std::sqrt((y.array() - y_mean).square().mean());
      if (!(y_std > 1e-12)) y_std = 1.0;
      const Eigen::VectorXd y_norm = (y.array() - y_mean) / y_std;

      GpFitOptions fit;
      fit.restarts = opt.hyper_restarts;
      const GpHyperparameters hyper = fit_hyperparameters(X, y_norm, rng, warm, fit);
      warm = hyper;
      GaussianProcess gp(X, y_norm, hyper);

      std::vector<double> next;
      if (gp.ok()) {
        const double best = y_norm.minCoeff();
        const double xi = opt.xi / y_std;
        auto ei = [&](std::span<const double> u) { return expected_improvement(gp.predict(u), best, xi); };

        std::vector<double> candidate(dim);
        double best_ei = -1.0;
        for (std::size_t s = 0; s < opt.acquisition_samples; ++s) {
          std::vector<double> u(dim);
          for (auto &v : u) v = rng.uniform();
          const double value = ei(u);
          if (value > best_ei) {
            best_ei = value;
            candidate = std::move(u);
          }
        }
        if (opt.polish_evals > 0) {
          auto clamp01 = [](std::span<const double> u) {
            std::vector<double> c(u.begin(), u.end());
            for (auto &v : c) v = std::clamp(v, 0.0, 1.0);
            return c;
          };
          SimplexOptions polish;
          polish.initial_step = 0.02;
          polish.xtol = 1e-4;
          polish.max_evals = opt.polish_evals;
          auto res = minimize_simplex([&](std::span<const double> u) { return -ei(clamp01(u)); }, candidate, polish);
          if (-res.f > best_ei) candidate = clamp01(res.x);
        }
        next = std::move(candidate);
      } else {
        next.resize(dim);
        for (auto &v : next) v = rng.uniform();
      }
      evaluate(std::move(next));
    }
    exhausted = true;
  } catch (const BudgetExhausted &) {
    exhausted = true;
  }
  return f.finish(config.threshold, exhausted);
}

OptimizationRun run_optimizer(Objective &objective, std::span<const double> start, const OptimizerConfig &config) {
  switch (config.kind) {
    case OptimizerKind::NelderMead: return nelder_mead(objective, start, config);
    case OptimizerKind::CmaEs: return cma_es(objective, start, config);
    case OptimizerKind::BayesGp: return gp_bayes_opt(objective, start, config);
  }
  throw ValidationError("unknown optimizer kind");
}

}  // namespace qaoa
