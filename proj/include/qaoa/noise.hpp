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

#ifndef QAOA_NOISE_HPP
#define QAOA_NOISE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qaoa/simulator.hpp"

namespace qaoa {

inline constexpr std::size_t kMaxDensityMatrixQubits = 8;

/// Average gate fidelities and per-qubit readout fidelities. Gate errors are
/// modeled as local depolarizing channels; readout as symmetric bit flips.
struct NoiseModel {
  std::vector<double> f1q;  // per qubit
  double fcz = 1.0;
  std::vector<double> fro;  // per qubit
  bool rz_noiseless = true;
  // Recorded for reference, not used by the channels.
  std::vector<double> t1_us;
  std::vector<double> t2_star_us;

  /// Two-qubit device defaults: F_1q = 0.9986 / 0.9993, F_CZ = 0.986,
  /// F_m = 0.86 / 0.95, T1 = 77 / 55 us, T2* = 49 / 82 us.
  static NoiseModel device_defaults();
  static NoiseModel ideal(std::size_t num_qubits);

  std::size_t num_qubits() const { return f1q.size(); }
  bool is_ideal() const;
};

void validate(const NoiseModel &noise);

std::string serialize_noise(const NoiseModel &noise);
NoiseModel parse_noise(std::string_view text);

/// Depolarizing strength lambda for rho -> (1 - lambda) rho + lambda I/d with
/// average gate fidelity F = 1 - lambda (d - 1) / d.
double depolarizing_rate(double fidelity, std::size_t dim);

class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t num_qubits);  // |0...0><0...0|
  static DensityMatrix from_state(const Statevector &state);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  void apply(const Gate &gate);
  /// Replaces the reduced state on `qubits` by the maximally mixed state with
  /// weight lambda.
  void depolarize(std::span<const std::size_t> qubits, double lambda);

  double trace() const;
  std::vector<double> probabilities() const;
  /// Largest |rho_ij - conj(rho_ji)|.
  double hermiticity_error() const;
  double fidelity_with(const Statevector &state) const;

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<Complex> data_;  // row-major
};

/// Gate-by-gate unitary conjugation, each gate followed by depolarizing on
/// its own qubits (RZ exempt when the model says so).
DensityMatrix simulate_noisy(const Circuit &circuit, const NoiseModel &noise);

/// Per-qubit stochastic matrices M[measured][true].
struct ConfusionMatrix {
  std::vector<std::array<std::array<double, 2>, 2>> per_qubit;

  /// Both error directions 1 - F_m.
  static ConfusionMatrix symmetric(std::span<const double> readout_fidelities);
  static ConfusionMatrix identity(std::size_t num_qubits);

  std::size_t num_qubits() const { return per_qubit.size(); }
};

void validate(const ConfusionMatrix &confusion);

std::vector<double> apply_readout_error(std::span<const double> probs, const ConfusionMatrix &confusion);

/// Inverse tensor-product correction, then clip negatives and renormalize.
std::vector<double> mitigate_readout(std::span<const double> empirical, const ConfusionMatrix &confusion);

/// Product of per-gate fidelities; RZ contributes 1 when noiseless.
double predict_circuit_fidelity(const GateTally &tally, const NoiseModel &noise);

}  // namespace qaoa

#endif  // QAOA_NOISE_HPP
