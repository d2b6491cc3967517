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

#include "qaoa/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_trivial_rotation(double theta) { return std::fabs(std::remainder(theta, 2.0 * kPi)) < 1e-12; }

bool is_rotation(GateKind kind) { return kind == GateKind::RX || kind == GateKind::RZ; }

void check_width(std::size_t n) {
  if (n == 0 || n > kMaxStatevectorQubits) throw ValidationError("qubit count out of range");
}

}  // namespace

double wrap_angle(double angle) {
  if (!std::isfinite(angle)) throw ValidationError("non-finite angle");
  double r = std::fmod(angle, kPi);
  if (r < 0.0) r += kPi;
  if (r >= kPi) r = 0.0;
  return r;
}

QaoaAngles::QaoaAngles(std::vector<double> gammas, std::vector<double> betas)
    : gammas_(std::move(gammas)), betas_(std::move(betas)) {
  if (gammas_.empty() || gammas_.size() != betas_.size()) {
    throw ValidationError("angles need equal, nonzero numbers of gammas and betas");
  }
  for (auto &g : gammas_) g = wrap_angle(g);
  for (auto &b : betas_) b = wrap_angle(b);
}

QaoaAngles QaoaAngles::from_flat(std::span<const double> flat) {
  if (flat.empty() || flat.size() % 2 != 0) throw ValidationError("flat angle vector must have even length");
  const std::size_t p = flat.size() / 2;
  return QaoaAngles({flat.begin(), flat.begin() + p}, {flat.begin() + p, flat.end()});
}

std::vector<double> QaoaAngles::flat() const {
  std::vector<double> out = gammas_;
  out.insert(out.end(), betas_.begin(), betas_.end());
  return out;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

std::array<Complex, 4> gate_matrix(const Gate &gate) {
  using namespace std::complex_literals;
  switch (gate.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::numbers::sqrt2;
      return {s, s, s, -s};
    }
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RX: {
      const double c = std::cos(gate.theta / 2.0);
      const double s = std::sin(gate.theta / 2.0);
      return {c, -1i * s, -1i * s, c};
    }
    case GateKind::RZ:
      return {std::exp(-0.5i * gate.theta), 0.0, 0.0, std::exp(0.5i * gate.theta)};
    case GateKind::CZ:
      break;
  }
  throw ValidationError("CZ has no single-qubit matrix");
}

Circuit::Circuit(std::size_t num_qubits) : n_(num_qubits) { check_width(num_qubits); }

void Circuit::append(const Gate &gate) {
  if (gate.q0 >= n_ || (gate.arity() == 2 && gate.q1 >= n_)) throw ValidationError("gate qubit out of range");
  if (gate.arity() == 2 && gate.q0 == gate.q1) throw ValidationError("CZ needs two distinct qubits");
  gates_.push_back(gate);
}

std::string Circuit::dump() const {
  std::ostringstream os;
  char buf[64];
  for (const auto &g : gates_) {
    os << gate_name(g.kind) << ' ' << g.q0;
    if (g.arity() == 2) os << ',' << g.q1;
    if (is_rotation(g.kind)) {
      std::snprintf(buf, sizeof buf, "%.12g", g.theta);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

Circuit peephole_optimize(const Circuit &circuit) {
  std::vector<Gate> out;
  out.reserve(circuit.gates().size());
  for (const Gate &g : circuit.gates()) {
    std::ptrdiff_t k = static_cast<std::ptrdiff_t>(out.size()) - 1;
    for (; k >= 0; --k) {
      const Gate &prev = out[static_cast<std::size_t>(k)];
      if (prev.touches(g.q0) || (g.arity() == 2 && prev.touches(g.q1))) break;
    }
    if (k >= 0) {
      Gate &prev = out[static_cast<std::size_t>(k)];
      const bool same_wires =
          prev.arity() == g.arity() &&
          (g.arity() == 1 ? prev.q0 == g.q0
                          : ((prev.q0 == g.q0 && prev.q1 == g.q1) || (prev.q0 == g.q1 && prev.q1 == g.q0)));
      if (same_wires && prev.kind == g.kind) {
        if (is_rotation(g.kind)) {
          prev.theta += g.theta;
          if (is_trivial_rotation(prev.theta)) out.erase(out.begin() + k);
        } else {
          // H, X and CZ are self-inverse.
          out.erase(out.begin() + k);
        }
        continue;
      }
    }
    if (is_rotation(g.kind) && is_trivial_rotation(g.theta)) continue;
    out.push_back(g);
  }
  Circuit result(circuit.num_qubits());
  for (const auto &g : out) result.append(g);
  return result;
}

std::size_t GateTally::count(GateKind kind) const {
  if (kind == GateKind::CZ) return cz;
  auto it = single_qubit.find(kind);
  if (it == single_qubit.end()) return 0;
  std::size_t total = 0;
  for (auto c : it->second) total += c;
  return total;
}

GateTally tally_gates(const Circuit &circuit) {
  GateTally tally;
  tally.num_qubits = circuit.num_qubits();
  for (GateKind kind : {GateKind::H, GateKind::X, GateKind::RX, GateKind::RZ}) {
    tally.single_qubit[kind].assign(circuit.num_qubits(), 0);
  }
  for (const auto &g : circuit.gates()) {
    if (g.kind == GateKind::CZ) {
      ++tally.cz;
    } else {
      ++tally.single_qubit[g.kind][g.q0];
    }
  }
  return tally;
}

Circuit build_qaoa_circuit(const IsingModel &model, const QaoaAngles &angles, bool optimize) {
  validate(model);
  Circuit c(model.n);
  for (std::size_t q = 0; q < model.n; ++q) c.append(Gate::h(q));
  for (std::size_t level = 0; level < angles.levels(); ++level) {
    const double gamma = angles.gammas()[level];
    const double beta = angles.betas()[level];
    for (std::size_t j = 0; j < model.n; ++j) {
      if (!model.h[j].is_zero()) c.append(Gate::rz(j, 2.0 * gamma * model.h[j].to_double()));
    }
    for (const auto &[key, value] : model.J) {
      const auto [j, k] = key;
      // H.CZ.H is a CNOT with target k, which parks the parity of j and k on k.
      c.append(Gate::h(k));
      c.append(Gate::cz(j, k));
      c.append(Gate::h(k));
      c.append(Gate::rz(k, -2.0 * gamma * value.to_double()));
      c.append(Gate::h(k));
      c.append(Gate::cz(j, k));
      c.append(Gate::h(k));
    }
    for (std::size_t q = 0; q < model.n; ++q) c.append(Gate::rx(q, 2.0 * beta));
  }
  return optimize ? peephole_optimize(c) : c;
}

namespace kernels {

void apply_1q(Complex *data, std::size_t stride, std::size_t num_qubits, std::size_t q,
              const std::array<Complex, 4> &m) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t mask = bit_of(num_qubits, q);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    Complex &a0 = data[i * stride];
    Complex &a1 = data[(i | mask) * stride];
    const Complex v0 = a0;
    const Complex v1 = a1;
    a0 = m[0] * v0 + m[1] * v1;
    a1 = m[2] * v0 + m[3] * v1;
  }
}

void apply_cz(Complex *data, std::size_t stride, std::size_t num_qubits, std::size_t a, std::size_t b) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t mask = bit_of(num_qubits, a) | bit_of(num_qubits, b);
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == mask) data[i * stride] = -data[i * stride];
  }
}

}  // namespace kernels

Statevector::Statevector(std::size_t num_qubits) : n_(num_qubits) {
  check_width(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : n_(num_qubits), amps_(std::move(amplitudes)) {
  check_width(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) throw ValidationError("amplitude count is not 2^n");
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (const auto &a : amps_) total += std::norm(a);
  return total;
}

void Statevector::apply(const Gate &gate) {
  if (gate.q0 >= n_ || (gate.arity() == 2 && (gate.q1 >= n_ || gate.q1 == gate.q0))) {
    throw ValidationError("gate qubit out of range");
  }
  if (gate.kind == GateKind::CZ) {
    kernels::apply_cz(amps_.data(), 1, n_, gate.q0, gate.q1);
  } else {
    kernels::apply_1q(amps_.data(), 1, n_, gate.q0, gate_matrix(gate));
  }
}

void Statevector::apply(const Circuit &circuit) {
  if (circuit.num_qubits() != n_) throw ValidationError("circuit width differs from state");
  for (const auto &g : circuit.gates()) apply(g);
}

Statevector uniform_state(std::size_t n) {
  check_width(n);
  const double a = std::pow(2.0, -0.5 * static_cast<double>(n));
  return Statevector(n, std::vector<Complex>(std::size_t{1} << n, Complex{a, 0.0}));
}

Statevector apply_gate(Statevector state, const Gate &gate) {
  state.apply(gate);
  return state;
}

Statevector run_circuit(const Circuit &circuit) {
  Statevector state(circuit.num_qubits());
  state.apply(circuit);
  return state;
}

Statevector evolve_direct(const IsingModel &model, const QaoaAngles &angles) {
  const auto energies = energy_spectrum(model);
  Statevector state = uniform_state(model.n);
  std::vector<Complex> amps = state.amplitudes();
  for (std::size_t level = 0; level < angles.levels(); ++level) {
    const double gamma = angles.gammas()[level];
    const double beta = angles.betas()[level];
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= std::polar(1.0, gamma * energies[i]);
    const std::array<Complex, 4> mix = {std::cos(beta), Complex{0.0, -std::sin(beta)},
                                        Complex{0.0, -std::sin(beta)}, std::cos(beta)};
    for (std::size_t q = 0; q < model.n; ++q) kernels::apply_1q(amps.data(), 1, model.n, q, mix);
  }
  return Statevector(model.n, std::move(amps));
}

std::vector<double> exact_probabilities(const Statevector &state) {
  std::vector<double> out(state.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(state[i]);
  return out;
}

double state_fidelity(const Statevector &a, const Statevector &b) {
  if (a.dim() != b.dim()) throw ValidationError("state dimensions differ");
  Complex overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

double expected_energy(std::span<const double> probabilities, const IsingModel &model) {
  const auto energies = energy_spectrum(model);
  if (probabilities.size() != energies.size()) throw ValidationError("distribution width differs from model");
  double f = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) f += probabilities[i] * energies[i];
  return f;
}

double cost_function(const Statevector &state, const IsingModel &model) {
  if (state.num_qubits() != model.n) throw ValidationError("state width differs from model");
  const auto probs = exact_probabilities(state);
  return expected_energy(probs, model);
}

}  // namespace qaoa
