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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <ostream>

#include "qaoa/errors.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/optimizers.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

void PrintTo(OptimizerKind kind, std::ostream *os) { *os << optimizer_name(kind); }

namespace {

constexpr double kPi = std::numbers::pi;

Objective sphere(std::size_t dim, double center) {
  return Objective(dim, [center](std::span<const double> x, std::size_t) {
    double s = 0.0;
    for (double v : x) s += (v - center) * (v - center);
    return ObjectiveValue{s};
  });
}

IsingModel problem_a() { return normalize_integer_spectrum(map_to_ising(builtin_problem('A'))); }

Objective exact_a(std::size_t p) {
  return make_qaoa_objective(problem_a(), p, Backend::ideal(), kExactShots, 0, {Selection::from_string("10")});
}

OptimizerConfig config(OptimizerKind kind, std::size_t budget, std::uint64_t seed = 1) {
  OptimizerConfig c = OptimizerConfig::defaults(kind);
  c.max_calls = budget;
  c.seed = seed;
  return c;
}

std::vector<double> random_start(Rng &rng, std::size_t dim) {
  std::vector<double> x(dim);
  for (auto &v : x) v = rng.uniform(0, kPi);
  return x;
}

TEST(Objective, LogsEveryCall) {
  Objective obj = sphere(2, 0.0);
  const std::vector<double> a{1.0, 2.0}, b{0.0, 0.5};
  obj(a);
  obj(b);
  ASSERT_EQ(obj.calls(), 2U);
  EXPECT_EQ(obj.log()[0].call_index, 1U);
  EXPECT_EQ(obj.log()[1].x, b);
  EXPECT_EQ(obj.log()[0].F, 5.0);
  const std::vector<double> wrong{1.0};
  EXPECT_THROW(obj(wrong), ValidationError);
}

TEST(Config, DefaultsAndNames) {
  EXPECT_EQ(OptimizerConfig::defaults(OptimizerKind::NelderMead).max_calls, 300U);
  EXPECT_EQ(OptimizerConfig::defaults(OptimizerKind::CmaEs).max_calls, 300U);
  EXPECT_EQ(OptimizerConfig::defaults(OptimizerKind::BayesGp).max_calls, 100U);
  EXPECT_EQ(optimizer_name(parse_optimizer("cmaes")), "cmaes");
  EXPECT_THROW(parse_optimizer("adam"), ValidationError);
  Objective obj = sphere(4, 0.0);
  const std::vector<double> x0(4, 0.0);
  EXPECT_THROW(nelder_mead(obj, x0, config(OptimizerKind::NelderMead, 4)), ValidationError);
}

TEST(NelderMead, Sphere) {
  Objective obj = sphere(3, 1.0);
  const std::vector<double> x0(3, 0.0);
  const auto run = nelder_mead(obj, x0, config(OptimizerKind::NelderMead, 300));
  EXPECT_LT(run.best_F, 1e-6);
}

TEST(NelderMead, ProblemALevelOne) {
  Objective obj = exact_a(1);
  const std::vector<double> x0{kPi / 4, kPi / 4};
  const auto run = nelder_mead(obj, x0, config(OptimizerKind::NelderMead, 300));
  EXPECT_LE(run.best_F, -0.49);
}

TEST(CmaEs, Sphere) {
  Objective obj = sphere(4, 0.5);
  const std::vector<double> x0(4, 2.0);
  const auto run = cma_es(obj, x0, config(OptimizerKind::CmaEs, 500));
  EXPECT_LT(run.best_F, 1e-4);
}

TEST(CmaEs, PopulationSizeDefault) {
  // d = 4: lambda = 4 + floor(3 ln 4) = 8, so the first generation is 8 calls
  Objective obj = sphere(4, 0.0);
  const std::vector<double> x0(4, 1.0);
  const auto run = cma_es(obj, x0, config(OptimizerKind::CmaEs, 20000));
  EXPECT_FALSE(run.budget_exhausted);
  EXPECT_EQ(run.trajectory.size() % 8, 0U);
  OptimizerConfig c = config(OptimizerKind::CmaEs, 20000);
  c.cma.population = 5;
  Objective obj5 = sphere(4, 0.0);
  const auto run5 = cma_es(obj5, x0, c);
  EXPECT_FALSE(run5.budget_exhausted);
  EXPECT_EQ(run5.trajectory.size() % 5, 0U);
  EXPECT_NE(run5.trajectory.size(), run.trajectory.size());
}

TEST(CmaEs, ProblemALevelTwoExact) {
  Rng rng(100);
  int good = 0;
  for (int r = 0; r < 200; ++r) {
    Objective obj = exact_a(2);
    const auto run = cma_es(obj, random_start(rng, 4), config(OptimizerKind::CmaEs, 300, derive_seed(5, r)));
    if (run.best_F <= -0.999) ++good;
  }
  EXPECT_GE(good, 60);  // 30% of 200
}

TEST(BayesOpt, OneDimensionalQuadratic) {
  Objective obj(1, [](std::span<const double> x, std::size_t) { return ObjectiveValue{(x[0] - 2.0) * (x[0] - 2.0)}; });
  const auto run = gp_bayes_opt(obj, std::nullopt, config(OptimizerKind::BayesGp, 40, 3));
  EXPECT_EQ(run.trajectory.size(), 40U);
  EXPECT_NEAR(run.best_x[0], 2.0, 0.05);
}

TEST(BayesOpt, StaysInBoxAndUsesStart) {
  Objective obj = sphere(2, 10.0);  // minimum outside the box
  const std::vector<double> start{0.3, 0.4};
  const auto run = gp_bayes_opt(obj, std::span<const double>(start), config(OptimizerKind::BayesGp, 30, 4));
  EXPECT_EQ(run.trajectory.front().x, start);
  for (const auto &e : run.trajectory) {
    for (double v : e.x) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, kPi);
    }
  }
  EXPECT_GT(run.best_x[0], 2.5);
}

TEST(BayesOpt, DimensionGuard) {
  Objective obj = sphere(11, 0.0);
  EXPECT_THROW(gp_bayes_opt(obj, std::nullopt, config(OptimizerKind::BayesGp, 100)), ValidationError);
}

class AllOptimizers : public ::testing::TestWithParam<OptimizerKind> {};

TEST_P(AllOptimizers, NeverExceedsBudget) {
  for (std::size_t budget : {5U, 13U, 40U}) {
    Objective obj = make_qaoa_objective(problem_a(), 2, Backend::ideal(), 200, 9, {Selection::from_string("10")});
    Rng rng(budget);
    const auto run = run_optimizer(obj, random_start(rng, 4), config(GetParam(), budget, 2));
    EXPECT_LE(run.trajectory.size(), budget);
    EXPECT_LE(obj.calls(), budget);
  }
}

TEST_P(AllOptimizers, Deterministic) {
  auto once = [&] {
    Objective obj = make_qaoa_objective(problem_a(), 2, Backend::ideal(), 500, 21, {Selection::from_string("10")});
    const std::vector<double> start{0.5, 1.5, 2.5, 0.7};
    return run_optimizer(obj, start, config(GetParam(), 60, 8));
  };
  const auto a = once(), b = once();
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
    EXPECT_EQ(a.trajectory[k].x, b.trajectory[k].x);
    EXPECT_EQ(a.trajectory[k].F, b.trajectory[k].F);
  }
}

TEST_P(AllOptimizers, BookkeepingMatchesTrajectory) {
  Rng rng(55);
  for (int r = 0; r < 5; ++r) {
    Objective obj = make_qaoa_objective(problem_a(), 2, Backend::ideal(), 1000, r, {Selection::from_string("10")});
    const auto run = run_optimizer(obj, random_start(rng, 4), config(GetParam(), 80, r));
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> first;
    for (const auto &e : run.trajectory) {
      best = std::min(best, e.F);
      if (!first && e.F < -0.95) first = e.call_index;
    }
    EXPECT_EQ(run.best_F, best);
    EXPECT_EQ(run.converged, first.has_value());
    EXPECT_EQ(run.calls_to_convergence, first);
    const auto again = summarize_trajectory(run.trajectory, -0.95, run.budget_exhausted);
    EXPECT_EQ(again.best_F, run.best_F);
    EXPECT_EQ(again.calls_to_convergence, run.calls_to_convergence);
    EXPECT_EQ(again.best_p_solution, run.best_p_solution);
  }
}

TEST_P(AllOptimizers, ExactLevelTwoConvergesFromSomeStarts) {
  const OptimizerKind kind = GetParam();
  const int runs = kind == OptimizerKind::BayesGp ? 20 : 200;
  Rng rng(77);
  int converged = 0;
  for (int r = 0; r < runs; ++r) {
    Objective obj = exact_a(2);
    const auto start = random_start(rng, 4);
    const auto run = run_optimizer(obj, start, config(kind, OptimizerConfig::defaults(kind).max_calls, r));
    if (run.best_F <= -0.95) ++converged;
  }
  EXPECT_GE(converged * 10, runs);
}

INSTANTIATE_TEST_SUITE_P(Kinds, AllOptimizers,
                         ::testing::Values(OptimizerKind::NelderMead, OptimizerKind::CmaEs, OptimizerKind::BayesGp),
                         [](const auto &info) { return std::string(optimizer_name(info.param)); });

}  // namespace
}  // namespace qaoa
