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

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "qaoa/errors.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/noise.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/simplex.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {
namespace {

constexpr double kPi = std::numbers::pi;

IsingModel problem_a() { return normalize_integer_spectrum(map_to_ising(builtin_problem('A'))); }

// Ideal p = 2 optimum of problem A, found by restarted simplex search.
QaoaAngles p2_optimum() {
  static const std::vector<double> best = [] {
    const IsingModel a = problem_a();
    auto F = [&](std::span<const double> x) { return cost_function(evolve_direct(a, QaoaAngles::from_flat(x)), a); };
    SimplexOptions opt;
    opt.initial_step = 0.3;
    opt.xtol = 1e-10;
    opt.max_evals = 20000;
    Rng rng(4);
    SimplexResult out;
    for (int r = 0; r < 20 && out.f > -1.0 + 1e-9; ++r) {
      std::vector<double> x0(4);
      for (auto &v : x0) v = rng.uniform(0, kPi);
      auto res = minimize_simplex(F, x0, opt);
      if (res.f < out.f) out = res;
    }
    return out.x;
  }();
  return QaoaAngles::from_flat(best);
}

double min_eigenvalue(const DensityMatrix &rho) {
  Eigen::MatrixXcd m(rho.dim(), rho.dim());
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    for (std::size_t c = 0; c < rho.dim(); ++c) m(r, c) = rho(r, c);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return es.eigenvalues().minCoeff();
}

TEST(DepolarizingRate, ClosedForm) {
  EXPECT_EQ(depolarizing_rate(1.0, 2), 0.0);
  EXPECT_NEAR(depolarizing_rate(0.986, 4), 0.014 * 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(depolarizing_rate(0.9986, 2), 0.0028, 1e-15);
  EXPECT_THROW(depolarizing_rate(0.5, 2), ValidationError);
  EXPECT_THROW(depolarizing_rate(1.01, 2), ValidationError);
  EXPECT_THROW(depolarizing_rate(0.9, 3), ValidationError);
}

TEST(NoiseModel, DefaultsAndValidation) {
  const NoiseModel d = NoiseModel::device_defaults();
  EXPECT_EQ(d.f1q, (std::vector<double>{0.9986, 0.9993}));
  EXPECT_EQ(d.fcz, 0.986);
  EXPECT_EQ(d.fro, (std::vector<double>{0.86, 0.95}));
  EXPECT_EQ(d.t1_us, (std::vector<double>{77.0, 55.0}));
  EXPECT_EQ(d.t2_star_us, (std::vector<double>{49.0, 82.0}));
  EXPECT_TRUE(d.rz_noiseless);
  EXPECT_FALSE(d.is_ideal());
  EXPECT_TRUE(NoiseModel::ideal(3).is_ideal());
  NoiseModel bad = d;
  bad.fcz = 0.5;
  EXPECT_THROW(validate(bad), ValidationError);
  bad = d;
  bad.fro = {0.9};
  EXPECT_THROW(validate(bad), ValidationError);
}

TEST(NoiseModel, JsonRoundTrip) {
  const NoiseModel d = NoiseModel::device_defaults();
  const NoiseModel back = parse_noise(serialize_noise(d));
  EXPECT_EQ(back.f1q, d.f1q);
  EXPECT_EQ(back.fcz, d.fcz);
  EXPECT_EQ(back.fro, d.fro);
  const NoiseModel minimal = parse_noise(R"({"f1q":[1,0.99],"fcz":0.98,"fro":[0.9,0.9]})");
  EXPECT_EQ(minimal.num_qubits(), 2U);
  EXPECT_THROW(parse_noise(R"({"f1q":[1],"fcz":0.98})"), ValidationError);
  EXPECT_THROW(parse_noise(R"({"f1q":[0.2],"fcz":0.98,"fro":[0.9]})"), ValidationError);
}

TEST(SimulateNoisy, IdealMatchesStatevectorOnRandomCircuits) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    Circuit c(3);
    for (int g = 0; g < 30; ++g) {
      const std::size_t q = rng.next() % 3;
      switch (rng.next() % 5) {
        case 0: c.append(Gate::h(q)); break;
        case 1: c.append(Gate::x(q)); break;
        case 2: c.append(Gate::rx(q, rng.uniform(-4, 4))); break;
        case 3: c.append(Gate::rz(q, rng.uniform(-4, 4))); break;
        default: c.append(Gate::cz(q, (q + 1) % 3)); break;
      }
    }
    const DensityMatrix rho = simulate_noisy(c, NoiseModel::ideal(3));
    EXPECT_NEAR(rho.fidelity_with(run_circuit(c)), 1.0, 1e-10);
  }
}

TEST(SimulateNoisy, SingleXGate) {
  NoiseModel n = NoiseModel::ideal(1);
  n.f1q = {0.9986};
  Circuit c(1);
  c.append(Gate::x(0));
  const auto probs = simulate_noisy(c, n).probabilities();
  EXPECT_NEAR(probs[1], 1.0 - 0.0028 / 2.0, 1e-14);
  EXPECT_NEAR(probs[0], 0.0028 / 2.0, 1e-14);
}

TEST(SimulateNoisy, CzDepolarizesThePair) {
  NoiseModel n = NoiseModel::ideal(2);
  n.fcz = 0.986;
  Circuit c(2);
  c.append(Gate::cz(0, 1));
  const auto probs = simulate_noisy(c, n).probabilities();
  const double lambda = 0.014 * 4.0 / 3.0;
  EXPECT_NEAR(probs[0], 1.0 - lambda + lambda / 4.0, 1e-14);
  EXPECT_NEAR(probs[3], lambda / 4.0, 1e-14);
}

TEST(SimulateNoisy, RzIsNoiseless) {
  NoiseModel n = NoiseModel::ideal(1);
  n.f1q = {0.9};
  Circuit c(1);
  c.append(Gate::rz(0, 0.4));
  EXPECT_NEAR(simulate_noisy(c, n).probabilities()[0], 1.0, 1e-15);
  n.rz_noiseless = false;
  EXPECT_LT(simulate_noisy(c, n).probabilities()[0], 1.0);
}

TEST(SimulateNoisy, Invariants) {
  Rng rng(6);
  const NoiseModel d = NoiseModel::device_defaults();
  const IsingModel a = problem_a();
  for (int t = 0; t < 20; ++t) {
    const QaoaAngles angles({rng.uniform(0, kPi), rng.uniform(0, kPi)}, {rng.uniform(0, kPi), rng.uniform(0, kPi)});
    const DensityMatrix rho = simulate_noisy(build_qaoa_circuit(a, angles), d);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
    EXPECT_LT(rho.hermiticity_error(), 1e-10);
    EXPECT_GT(min_eigenvalue(rho), -1e-9);
  }
  EXPECT_THROW(simulate_noisy(Circuit(9), NoiseModel::ideal(9)), ValidationError);
  EXPECT_THROW(simulate_noisy(Circuit(3), NoiseModel::device_defaults()), ValidationError);
}

TEST(SimulateNoisy, ProblemAOptimumWithDeviceFidelities) {
  const QaoaAngles opt = p2_optimum();
  const IsingModel a = problem_a();
  ASSERT_NEAR(exact_probabilities(evolve_direct(a, opt))[2], 1.0, 1e-6);
  const double p10 = simulate_noisy(build_qaoa_circuit(a, opt), NoiseModel::device_defaults()).probabilities()[2];
  EXPECT_GE(p10, 0.93);
  EXPECT_LE(p10, 0.99);
}

TEST(SimulateNoisy, LoweringAFidelityNeverHelps) {
  const QaoaAngles opt = p2_optimum();
  const Circuit c = build_qaoa_circuit(problem_a(), opt);
  const NoiseModel base = NoiseModel::device_defaults();
  const auto p10 = [&](const NoiseModel &n) { return simulate_noisy(c, n).probabilities()[2]; };
  for (int which = 0; which < 3; ++which) {
    double previous = 2.0;
    for (double f : {1.0, 0.99, 0.97, 0.93, 0.85}) {
      NoiseModel n = base;
      if (which == 0) n.f1q[0] = f;
      if (which == 1) n.f1q[1] = f;
      if (which == 2) n.fcz = f;
      const double p = p10(n);
      EXPECT_LE(p, previous + 1e-12) << which << " " << f;
      previous = p;
    }
  }
}

TEST(Readout, ApplyExamples) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const auto same = apply_readout_error(p, ConfusionMatrix::identity(2));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(same[k], p[k], 1e-15);
  const std::vector<double> fro{0.86};
  const std::vector<double> zero{1.0, 0.0};
  const auto measured = apply_readout_error(zero, ConfusionMatrix::symmetric(fro));
  EXPECT_NEAR(measured[0], 0.86, 1e-15);
  EXPECT_NEAR(measured[1], 0.14, 1e-15);
  const std::vector<double> bad{0.7, 0.7};
  EXPECT_THROW(apply_readout_error(bad, ConfusionMatrix::symmetric(fro)), ValidationError);
}

TEST(Readout, TwoQubitTensorOrder) {
  // qubit 0 (leading bit) flips with 0.14, qubit 1 with 0.05
  const std::vector<double> fro{0.86, 0.95};
  const std::vector<double> p{0.0, 0.0, 1.0, 0.0};  // "10"
  const auto m = apply_readout_error(p, ConfusionMatrix::symmetric(fro));
  EXPECT_NEAR(m[2], 0.86 * 0.95, 1e-15);
  EXPECT_NEAR(m[0], 0.14 * 0.95, 1e-15);
  EXPECT_NEAR(m[3], 0.86 * 0.05, 1e-15);
  EXPECT_NEAR(m[1], 0.14 * 0.05, 1e-15);
}

TEST(Readout, MitigateExamples) {
  const std::vector<double> fro{0.86};
  const auto c = ConfusionMatrix::symmetric(fro);
  const std::vector<double> measured{0.86, 0.14};
  const auto back = mitigate_readout(measured, c);
  EXPECT_NEAR(back[0], 1.0, 1e-12);
  EXPECT_NEAR(back[1], 0.0, 1e-12);
  const std::vector<double> uniform{0.5, 0.5};
  const auto u = mitigate_readout(uniform, c);
  EXPECT_NEAR(u[0], 0.5, 1e-15);
  // inverse gives (1.1944, -0.1944); clipped and renormalized
  const std::vector<double> pure{1.0, 0.0};
  const auto clipped = mitigate_readout(pure, c);
  EXPECT_EQ(clipped[1], 0.0);
  EXPECT_NEAR(clipped[0], 1.0, 1e-15);
  const std::vector<double> half{0.5};
  EXPECT_THROW(mitigate_readout(uniform, ConfusionMatrix::symmetric(half)), ValidationError);
}

TEST(Readout, RoundTripOnPositiveDistributions) {
  Rng rng(77);
  const std::vector<double> fro{0.86, 0.95};
  const auto c = ConfusionMatrix::symmetric(fro);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> p(4);
    double s = 0.0;
    for (auto &v : p) s += (v = rng.uniform() + 1e-3);
    for (auto &v : p) v /= s;
    const auto back = mitigate_readout(apply_readout_error(p, c), c);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(back[k], p[k], 1e-10);
  }
}

TEST(Prediction, ProductOfFidelities) {
  const NoiseModel d = NoiseModel::device_defaults();
  GateTally empty;
  empty.num_qubits = 2;
  EXPECT_EQ(predict_circuit_fidelity(empty, d), 1.0);
  GateTally three_cz = empty;
  three_cz.cz = 3;
  EXPECT_NEAR(predict_circuit_fidelity(three_cz, d), std::pow(0.986, 3), 1e-15);
  // 6 X and 4 H split five per qubit, 4 Z, 3 CZ
  GateTally listed = three_cz;
  listed.single_qubit[GateKind::X] = {3, 3};
  listed.single_qubit[GateKind::H] = {2, 2};
  listed.single_qubit[GateKind::RZ] = {2, 2};
  const double expected = std::pow(0.9986, 5) * std::pow(0.9993, 5) * std::pow(0.986, 3);
  EXPECT_NEAR(predict_circuit_fidelity(listed, d), expected, 1e-15);
  EXPECT_NEAR(expected, 0.949, 5e-4);
}

TEST(Prediction, DeeperCircuitsPredictLower) {
  const IsingModel a = problem_a();
  const NoiseModel d = NoiseModel::device_defaults();
  auto predict = [&](std::size_t p) {
    const std::vector<double> g(p, kPi / 5), b(p, kPi / 7);
    return predict_circuit_fidelity(tally_gates(build_qaoa_circuit(a, QaoaAngles(g, b))), d);
  };
  EXPECT_LT(predict(3), predict(2));
  EXPECT_LT(predict(2), predict(1));
}

}  // namespace
}  // namespace qaoa
