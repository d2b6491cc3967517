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

#include "oracles.hpp"
#include "qaoa/errors.hpp"
#include "qaoa/ising.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/simplex.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {
namespace {

constexpr double kPi = std::numbers::pi;

IsingModel problem(char id) { return normalize_integer_spectrum(map_to_ising(builtin_problem(id))); }

Statevector random_state(std::size_t n, Rng &rng) {
  std::vector<Complex> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (auto &a : amps) {
    a = {rng.normal(), rng.normal()};
    norm += std::norm(a);
  }
  for (auto &a : amps) a /= std::sqrt(norm);
  return Statevector(n, amps);
}

// random model with half-integer coefficients, as produced by penalty mappings
IsingModel random_model(std::size_t n, Rng &rng) {
  IsingModel m;
  m.n = n;
  for (std::size_t i = 0; i < n; ++i) m.h.push_back(Rational(static_cast<std::int64_t>(rng.next() % 7) - 3, 2));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto v = static_cast<std::int64_t>(rng.next() % 4);
      if (v != 0) m.J[{i, j}] = Rational(v, 2);
    }
  }
  return m;
}

TEST(WrapAngle, IntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(0.5), 0.5);
  EXPECT_NEAR(wrap_angle(kPi + 0.25), 0.25, 1e-15);
  EXPECT_NEAR(wrap_angle(-0.25), kPi - 0.25, 1e-15);
  EXPECT_EQ(wrap_angle(kPi), 0.0);
  for (double a : {-100.0, -3.2, 7.9, 1e3}) {
    const double w = wrap_angle(a);
    EXPECT_GE(w, 0.0);
    EXPECT_LT(w, kPi);
  }
}

TEST(QaoaAngles, WrapsAndFlattens) {
  const QaoaAngles a({kPi + 0.1, 0.2}, {-0.3, 0.4});
  EXPECT_NEAR(a.gammas()[0], 0.1, 1e-15);
  EXPECT_NEAR(a.betas()[0], kPi - 0.3, 1e-15);
  EXPECT_EQ(a.levels(), 2U);
  const auto flat = a.flat();
  ASSERT_EQ(flat.size(), 4U);
  EXPECT_EQ(QaoaAngles::from_flat(flat).flat(), flat);
  EXPECT_THROW(QaoaAngles({0.1}, {0.1, 0.2}), ValidationError);
  EXPECT_THROW(QaoaAngles({}, {}), ValidationError);
  const std::vector<double> odd{0.1, 0.2, 0.3};
  EXPECT_THROW(QaoaAngles::from_flat(odd), ValidationError);
}

TEST(UniformState, Amplitudes) {
  const Statevector one = uniform_state(1);
  EXPECT_NEAR(one[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(one[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
  const Statevector two = uniform_state(2);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(two[k].real(), 0.5, 1e-15);
  EXPECT_NEAR(uniform_state(5).norm_squared(), 1.0, 1e-12);
  EXPECT_THROW(uniform_state(0), ValidationError);
  EXPECT_THROW(uniform_state(25), ValidationError);
}

TEST(ApplyGate, Semantics) {
  Statevector s(1);
  s.apply(Gate::rx(0, kPi));
  EXPECT_NEAR(std::abs(s[1] - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_EQ(exact_probabilities(s)[0], exact_probabilities(s)[0]);
  EXPECT_NEAR(exact_probabilities(s)[1], 1.0, 1e-15);

  Statevector z(1);
  z.apply(Gate::h(0));
  z.apply(Gate::rz(0, 0.7));
  EXPECT_NEAR(std::arg(z[0]), -0.35, 1e-15);
  EXPECT_NEAR(std::arg(z[1]), 0.35, 1e-15);

  for (std::uint64_t basis = 0; basis < 4; ++basis) {
    std::vector<Complex> amps(4, 0.0);
    amps[basis] = 1.0;
    Statevector b(2, amps);
    b.apply(Gate::cz(0, 1));
    EXPECT_EQ(b[basis], Complex(basis == 3 ? -1.0 : 1.0, 0.0));
  }

  Statevector x(2);
  x.apply(Gate::x(0));
  EXPECT_EQ(x[2], Complex(1.0, 0.0));  // qubit 0 is the leading bit
}

TEST(ApplyGate, HadamardSquaredAndNorm) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Statevector s = random_state(3, rng);
    Statevector hh = apply_gate(apply_gate(s, Gate::h(1)), Gate::h(1));
    for (std::size_t k = 0; k < s.dim(); ++k) EXPECT_NEAR(std::abs(hh[k] - s[k]), 0.0, 1e-12);
    for (const Gate &g : {Gate::h(0), Gate::x(2), Gate::rx(1, rng.uniform(0, 7)), Gate::rz(0, rng.uniform(0, 7)),
                          Gate::cz(0, 2)}) {
      EXPECT_NEAR(apply_gate(s, g).norm_squared(), 1.0, 1e-12);
    }
  }
}

TEST(ApplyGate, BadIndices) {
  Statevector s(2);
  EXPECT_THROW(s.apply(Gate::h(2)), ValidationError);
  EXPECT_THROW(s.apply(Gate::cz(1, 1)), ValidationError);
  Circuit c(2);
  EXPECT_THROW(c.append(Gate::cz(0, 5)), ValidationError);
  EXPECT_THROW(Statevector(2, std::vector<Complex>(3)), ValidationError);
}

TEST(Peephole, CancelsAndMerges) {
  Circuit c(2);
  c.append(Gate::h(0));
  c.append(Gate::h(0));
  c.append(Gate::rz(1, 0.3));
  c.append(Gate::h(0));  // different wire, RZ stays mergeable
  c.append(Gate::rz(1, 0.4));
  c.append(Gate::cz(0, 1));
  c.append(Gate::cz(1, 0));
  c.append(Gate::rx(1, kPi));
  c.append(Gate::rx(1, kPi));
  const Circuit o = peephole_optimize(c);
  ASSERT_EQ(o.gates().size(), 2U);
  EXPECT_EQ(o.gates()[0].kind, GateKind::RZ);
  EXPECT_NEAR(o.gates()[0].theta, 0.7, 1e-15);
  EXPECT_EQ(o.gates()[1].kind, GateKind::H);
}

TEST(Peephole, PreservesStateOnRandomCircuits) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    Circuit c(3);
    for (int g = 0; g < 40; ++g) {
      const std::size_t q = rng.next() % 3;
      switch (rng.next() % 5) {
        case 0: c.append(Gate::h(q)); break;
        case 1: c.append(Gate::x(q)); break;
        case 2: c.append(Gate::rx(q, rng.uniform(-4, 4))); break;
        case 3: c.append(Gate::rz(q, rng.uniform(-4, 4))); break;
        default: c.append(Gate::cz(q, (q + 1 + rng.next() % 2) % 3)); break;
      }
    }
    EXPECT_NEAR(state_fidelity(run_circuit(c), run_circuit(peephole_optimize(c))), 1.0, 1e-12);
  }
}

TEST(Circuit, DumpFormat) {
  Circuit c(2);
  c.append(Gate::h(0));
  c.append(Gate::cz(0, 1));
  c.append(Gate::rz(1, 0.5));
  EXPECT_EQ(c.dump(), "H 0\nCZ 0,1\nRZ 1,0.5\n");
}

TEST(BuildCircuit, ZeroAnglesActAsHadamards) {
  const Circuit c = build_qaoa_circuit(problem('A'), QaoaAngles({0.0}, {0.0}));
  ASSERT_EQ(c.gates().size(), 2U);
  for (const auto &g : c.gates()) EXPECT_EQ(g.kind, GateKind::H);
  EXPECT_NEAR(state_fidelity(run_circuit(c), uniform_state(2)), 1.0, 1e-12);
}

TEST(BuildCircuit, ProblemCHasNoCz) {
  const auto tally = tally_gates(build_qaoa_circuit(problem('C'), QaoaAngles({0.4}, {0.3})));
  EXPECT_EQ(tally.count(GateKind::CZ), 0U);
}

TEST(BuildCircuit, ProblemATallyAtTwoLevels) {
  const auto tally = tally_gates(build_qaoa_circuit(problem('A'), QaoaAngles({0.4, 0.9}, {0.3, 1.1})));
  EXPECT_EQ(tally.count(GateKind::CZ), 4U);
  EXPECT_EQ(tally.count(GateKind::H), 8U);
  EXPECT_EQ(tally.count(GateKind::RX), 4U);
  EXPECT_EQ(tally.count(GateKind::RZ), 4U);
  EXPECT_EQ(tally.count(GateKind::X), 0U);
}

TEST(EvolveDirect, ZeroAnglesGiveUniform) {
  Rng rng(2);
  const IsingModel m = random_model(3, rng);
  EXPECT_NEAR(state_fidelity(evolve_direct(m, QaoaAngles({0.0}, {0.0})), uniform_state(3)), 1.0, 1e-14);
}

TEST(EvolveDirect, SingleSpinByHand) {
  // h = -1: energy +1 on bit 0, -1 on bit 1; phases e^{+i g E}, then cos b I - i sin b X
  IsingModel m;
  m.n = 1;
  m.h = {Rational(-1)};
  for (const double g : {kPi / 2, kPi / 3}) {
    const double b = kPi / 4;
    const Complex a0 = std::exp(Complex(0, g)) / std::sqrt(2.0);
    const Complex a1 = std::exp(Complex(0, -g)) / std::sqrt(2.0);
    const Complex c = std::cos(b), s = Complex(0, -std::sin(b));
    const double p1 = std::norm(s * a0 + c * a1);
    const auto probs = exact_probabilities(evolve_direct(m, QaoaAngles({g}, {b})));
    EXPECT_NEAR(probs[1], p1, 1e-14);
    EXPECT_NEAR(probs[0], 1.0 - p1, 1e-14);
    EXPECT_NEAR(exact_probabilities(run_circuit(build_qaoa_circuit(m, QaoaAngles({g}, {b}))))[1], p1, 1e-14);
  }
}

TEST(Equivalence, CircuitDirectAndDenseOracle) {
  Rng rng(2026);
  std::vector<IsingModel> models;
  for (char id : {'A', 'B', 'C', 'D'}) models.push_back(problem(id));
  for (int k = 0; k < 20; ++k) models.push_back(random_model(2 + rng.next() % 2, rng));
  for (const auto &m : models) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t p = 1 + t % 2;
      std::vector<double> g(p), b(p);
      for (auto &v : g) v = rng.uniform(0, kPi);
      for (auto &v : b) v = rng.uniform(0, kPi);
      const QaoaAngles angles(g, b);
      const Statevector direct = evolve_direct(m, angles);
      const Statevector circ = run_circuit(build_qaoa_circuit(m, angles));
      ASSERT_NEAR(state_fidelity(circ, direct), 1.0, 1e-10);
      if (t % 10 == 0) {
        ASSERT_NEAR(oracle::fidelity(oracle::qaoa_state(m, g, b), direct.amplitudes()), 1.0, 1e-10);
      }
    }
  }
}

TEST(Equivalence, UnoptimizedCircuitAgrees) {
  const IsingModel m = problem('A');
  const QaoaAngles angles({0.3, 1.2}, {2.5, 0.7});
  EXPECT_NEAR(state_fidelity(run_circuit(build_qaoa_circuit(m, angles, false)), evolve_direct(m, angles)), 1.0,
              1e-12);
}

TEST(CostFunction, Examples) {
  for (char id : {'A', 'B', 'C', 'D'}) EXPECT_NEAR(cost_function(uniform_state(2), problem(id)), 0.0, 1e-15);
  const IsingModel a = problem('A');
  const auto state = evolve_direct(a, QaoaAngles({0.8}, {2.1}));
  const auto probs = exact_probabilities(state);
  double by_spectrum = 0.0;
  const auto spectrum = energy_spectrum(a);
  for (std::size_t k = 0; k < 4; ++k) by_spectrum += probs[k] * spectrum[k];
  EXPECT_NEAR(cost_function(state, a), by_spectrum, 1e-14);
  EXPECT_NEAR(expected_energy(probs, a), by_spectrum, 1e-14);
  // <psi|C|psi> from the dense matrix
  const auto psi = oracle::qaoa_state(a, {0.8}, {2.1});
  EXPECT_NEAR((psi.adjoint() * oracle::hamiltonian(a) * psi)(0).real(), by_spectrum, 1e-12);
  EXPECT_THROW(cost_function(uniform_state(3), a), ValidationError);
}

TEST(Periodicity, BetaPlusPiAndGammaPlusTwoPi) {
  Rng rng(8);
  for (char id : {'A', 'B', 'C', 'D'}) {
    const IsingModel m = problem(id);
    for (int t = 0; t < 10; ++t) {
      const double g = rng.uniform(0, kPi), b = rng.uniform(0, kPi);
      const auto base = exact_probabilities(evolve_direct(m, QaoaAngles({g}, {b})));
      // QaoaAngles wraps, so build the shifted states from unwrapped circuits
      Circuit shifted(2);
      const Circuit plain = build_qaoa_circuit(m, QaoaAngles({g}, {b}), false);
      for (const auto &gate : plain.gates()) {
        Gate copy = gate;
        if (copy.kind == GateKind::RX) copy.theta += 2.0 * kPi;
        if (copy.kind == GateKind::RZ) copy.theta *= (g + 2.0 * kPi) / g;
        shifted.append(copy);
      }
      const auto moved = exact_probabilities(run_circuit(shifted));
      for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(moved[k], base[k], 1e-10);
      const auto dense = oracle::qaoa_state(m, {g + 2.0 * kPi}, {b + kPi});
      EXPECT_NEAR(oracle::fidelity(dense, evolve_direct(m, QaoaAngles({g}, {b})).amplitudes()), 1.0, 1e-10);
    }
  }
}

TEST(Landscape, ProblemALocalMinimumNearThreeQuarterPi) {
  const IsingModel a = problem('A');
  auto F = [&](std::span<const double> x) {
    return cost_function(evolve_direct(a, QaoaAngles({x[0]}, {x[1]})), a);
  };
  SimplexOptions opt;
  opt.initial_step = 0.05;
  opt.xtol = 1e-8;
  opt.max_evals = 2000;
  const std::vector<double> start{0.75 * kPi, 0.75 * kPi};
  const auto local = minimize_simplex(F, start, opt);
  EXPECT_NEAR(local.x[0], 0.75 * kPi, 0.3);
  EXPECT_NEAR(local.x[1], 0.75 * kPi, 0.3);
  EXPECT_GT(local.f, -0.5 + 0.01);
  EXPECT_LT(local.f, 0.0);
}

TEST(Solvability, ProblemAAtTwoLevels) {
  const IsingModel a = problem('A');
  auto F = [&](std::span<const double> x) { return cost_function(evolve_direct(a, QaoaAngles::from_flat(x)), a); };
  SimplexOptions opt;
  opt.initial_step = 0.3;
  opt.xtol = 1e-10;
  opt.max_evals = 20000;
  double best = 1.0;
  std::vector<double> best_x;
  Rng rng(4);
  for (int restart = 0; restart < 20 && best > -1.0 + 1e-7; ++restart) {
    std::vector<double> x0(4);
    for (auto &v : x0) v = rng.uniform(0, kPi);
    const auto r = minimize_simplex(F, x0, opt);
    if (r.f < best) {
      best = r.f;
      best_x = r.x;
    }
  }
  EXPECT_NEAR(best, -1.0, 1e-6);
  EXPECT_NEAR(exact_probabilities(evolve_direct(a, QaoaAngles::from_flat(best_x)))[2], 1.0, 1e-6);
}

}  // namespace
}  // namespace qaoa
