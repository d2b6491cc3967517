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

#ifndef QAOA_SIMULATOR_HPP
#define QAOA_SIMULATOR_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoa/ising.hpp"

namespace qaoa {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxStatevectorQubits = 24;

/// Maps any real angle into [0, pi).
double wrap_angle(double angle);

/// Variational angles (gamma_1..gamma_p, beta_1..beta_p), wrapped into
/// [0, pi) on construction.
class QaoaAngles {
 public:
  QaoaAngles(std::vector<double> gammas, std::vector<double> betas);

  /// Flat layout [gamma_1..gamma_p, beta_1..beta_p], as seen by optimizers.
  static QaoaAngles from_flat(std::span<const double> flat);

  std::size_t levels() const { return gammas_.size(); }
  const std::vector<double> &gammas() const { return gammas_; }
  const std::vector<double> &betas() const { return betas_; }
  std::vector<double> flat() const;

 private:
  std::vector<double> gammas_;
  std::vector<double> betas_;
};

enum class GateKind { H, X, RX, RZ, CZ };

std::string_view gate_name(GateKind kind);

struct Gate {
  GateKind kind;
  std::size_t q0;
  std::size_t q1 = 0;  // second qubit, CZ only
  double theta = 0.0;  // radians, RX and RZ only

  static Gate h(std::size_t q) { return {GateKind::H, q}; }
  static Gate x(std::size_t q) { return {GateKind::X, q}; }
  static Gate rx(std::size_t q, double theta) { return {GateKind::RX, q, 0, theta}; }
  static Gate rz(std::size_t q, double theta) { return {GateKind::RZ, q, 0, theta}; }
  static Gate cz(std::size_t a, std::size_t b) { return {GateKind::CZ, a, b}; }

  std::size_t arity() const { return kind == GateKind::CZ ? 2 : 1; }
  bool touches(std::size_t q) const { return q0 == q || (arity() == 2 && q1 == q); }
};

/// 2x2 unitary of a single-qubit gate, row-major, in the |0>,|1> basis.
std::array<Complex, 4> gate_matrix(const Gate &gate);

class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }
  const std::vector<Gate> &gates() const { return gates_; }
  void append(const Gate &gate);

  /// One gate per line: `KIND q[,q2][,theta]`, theta with 12 significant digits.
  std::string dump() const;

 private:
  std::size_t n_;
  std::vector<Gate> gates_;
};

/// Cancels wire-adjacent H.H, X.X and CZ.CZ pairs and merges wire-adjacent
/// rotations about the same axis, dropping rotations that become trivial
/// (multiples of 2 pi, which are global phases).
Circuit peephole_optimize(const Circuit &circuit);

struct GateTally {
  std::size_t num_qubits = 0;
  std::map<GateKind, std::vector<std::size_t>> single_qubit;  // per-qubit counts
  std::size_t cz = 0;

  std::size_t count(GateKind kind) const;
};

GateTally tally_gates(const Circuit &circuit);

/// Initial Hadamard layer, then for each level: RZ(2 gamma h_j) per field,
/// an H-conjugated CZ.RZ(-2 gamma J_jk).CZ block per coupling, and RX(2 beta)
/// on every qubit. The cost layer is exp(+i gamma C) up to global phase.
/// Optionally passed through peephole_optimize.
Circuit build_qaoa_circuit(const IsingModel &model, const QaoaAngles &angles, bool optimize = true);

/// Pure state over 2^n basis strings; qubit 0 (subset 1) is the most
/// significant bit of the index.
class Statevector {
 public:
  explicit Statevector(std::size_t num_qubits);  // |0...0>
  Statevector(std::size_t num_qubits, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex> &amplitudes() const { return amps_; }
  Complex operator[](std::size_t index) const { return amps_[index]; }
  double norm_squared() const;

  void apply(const Gate &gate);
  void apply(const Circuit &circuit);

 private:
  std::size_t n_;
  std::vector<Complex> amps_;
};

Statevector uniform_state(std::size_t n);
Statevector apply_gate(Statevector state, const Gate &gate);
Statevector run_circuit(const Circuit &circuit);

/// Gate-free reference: diagonal cost phases e^{+i gamma E(bits)} followed by
/// the product of cos(beta) I - i sin(beta) X rotations, per level.
Statevector evolve_direct(const IsingModel &model, const QaoaAngles &angles);

std::vector<double> exact_probabilities(const Statevector &state);

/// |<a|b>|^2
double state_fidelity(const Statevector &a, const Statevector &b);

/// Expectation of the cost Hamiltonian for a basis-state distribution.
double expected_energy(std::span<const double> probabilities, const IsingModel &model);
double cost_function(const Statevector &state, const IsingModel &model);

// Low-level kernels shared with the density-matrix simulator. `stride` is the
// distance between consecutive basis entries of the vector being transformed.
namespace kernels {
inline std::size_t bit_of(std::size_t num_qubits, std::size_t q) { return std::size_t{1} << (num_qubits - 1 - q); }
void apply_1q(Complex *data, std::size_t stride, std::size_t num_qubits, std::size_t q,
              const std::array<Complex, 4> &m);
void apply_cz(Complex *data, std::size_t stride, std::size_t num_qubits, std::size_t a, std::size_t b);
}  // namespace kernels

}  // namespace qaoa

#endif  // QAOA_SIMULATOR_HPP
