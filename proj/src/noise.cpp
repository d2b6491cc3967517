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

#include "qaoa/noise.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

void check_fidelity(double f, const char *what) {
  if (!(f > 0.5 && f <= 1.0)) throw ValidationError(std::string(what) + " fidelity must lie in (0.5, 1]");
}

// Applies a real 2x2 matrix along qubit q of a length-2^n vector.
void apply_real_1q(std::vector<double> &v, std::size_t n, std::size_t q, const std::array<std::array<double, 2>, 2> &m) {
  const std::size_t mask = kernels::bit_of(n, q);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & mask) continue;
    const double v0 = v[i];
    const double v1 = v[i | mask];
    v[i] = m[0][0] * v0 + m[0][1] * v1;
    v[i | mask] = m[1][0] * v0 + m[1][1] * v1;
  }
}

std::size_t width_of(std::size_t size) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size || n == 0) throw ValidationError("distribution length is not 2^n");
  return n;
}

void check_distribution(std::span<const double> probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -1e-12) throw ValidationError("distribution has a negative or non-finite entry");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ValidationError("distribution does not sum to 1");
}

}  // namespace

NoiseModel NoiseModel::device_defaults() {
  NoiseModel m;
  m.f1q = {0.9986, 0.9993};
  m.fcz = 0.986;
  m.fro = {0.86, 0.95};
  m.t1_us = {77.0, 55.0};
  m.t2_star_us = {49.0, 82.0};
  return m;
}

NoiseModel NoiseModel::ideal(std::size_t num_qubits) {
  NoiseModel m;
  m.f1q.assign(num_qubits, 1.0);
  m.fro.assign(num_qubits, 1.0);
  return m;
}

bool NoiseModel::is_ideal() const {
  auto one = [](double f) { return f == 1.0; };
  return fcz == 1.0 && std::all_of(f1q.begin(), f1q.end(), one) && std::all_of(fro.begin(), fro.end(), one);
}

void validate(const NoiseModel &noise) {
  if (noise.f1q.empty()) throw ValidationError("noise model needs per-qubit gate fidelities");
  if (noise.fro.size() != noise.f1q.size()) throw ValidationError("readout fidelities must match qubit count");
  for (double f : noise.f1q) check_fidelity(f, "single-qubit");
  for (double f : noise.fro) check_fidelity(f, "readout");
  check_fidelity(noise.fcz, "CZ");
}

std::string serialize_noise(const NoiseModel &noise) {
  nlohmann::ordered_json doc;
  doc["f1q"] = noise.f1q;
  doc["fcz"] = noise.fcz;
  doc["fro"] = noise.fro;
  if (!noise.t1_us.empty()) doc["t1_us"] = noise.t1_us;
  if (!noise.t2_star_us.empty()) doc["t2_star_us"] = noise.t2_star_us;
  return doc.dump();
}

NoiseModel parse_noise(std::string_view text) {
  NoiseModel m;
  try {
    auto doc = nlohmann::json::parse(text);
    m.f1q = doc.at("f1q").get<std::vector<double>>();
    m.fcz = doc.at("fcz").get<double>();
    m.fro = doc.at("fro").get<std::vector<double>>();
    if (doc.contains("t1_us")) m.t1_us = doc.at("t1_us").get<std::vector<double>>();
    if (doc.contains("t2_star_us")) m.t2_star_us = doc.at("t2_star_us").get<std::vector<double>>();
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("malformed noise document: ") + e.what());
  }
  validate(m);
  return m;
}

double depolarizing_rate(double fidelity, std::size_t dim) {
  if (dim != 2 && dim != 4) throw ValidationError("gate dimension must be 2 or 4");
  check_fidelity(fidelity, "gate");
  const double d = static_cast<double>(dim);
  return (1.0 - fidelity) * d / (d - 1.0);
}

DensityMatrix::DensityMatrix(std::size_t num_qubits) : n_(num_qubits), dim_(std::size_t{1} << num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxDensityMatrixQubits) {
    throw ValidationError("density-matrix width out of range");
  }
  data_.assign(dim_ * dim_, Complex{0.0, 0.0});
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_state(const Statevector &state) {
  DensityMatrix rho(state.num_qubits());
  for (std::size_t r = 0; r < rho.dim_; ++r) {
    for (std::size_t c = 0; c < rho.dim_; ++c) rho.data_[r * rho.dim_ + c] = state[r] * std::conj(state[c]);
  }
  return rho;
}

void DensityMatrix::apply(const Gate &gate) {
  if (gate.q0 >= n_ || (gate.arity() == 2 && (gate.q1 >= n_ || gate.q1 == gate.q0))) {
    throw ValidationError("gate qubit out of range");
  }
  if (gate.kind == GateKind::CZ) {
    // Diagonal, real: conjugation flips the sign wherever exactly one of row
    // and column has both qubits set.
    for (std::size_t c = 0; c < dim_; ++c) kernels::apply_cz(data_.data() + c, dim_, n_, gate.q0, gate.q1);
    for (std::size_t r = 0; r < dim_; ++r) kernels::apply_cz(data_.data() + r * dim_, 1, n_, gate.q0, gate.q1);
    return;
  }
  const auto u = gate_matrix(gate);
  const std::array<Complex, 4> u_conj = {std::conj(u[0]), std::conj(u[1]), std::conj(u[2]), std::conj(u[3])};
  // U rho: transform every column. rho U^dagger: every row by conj(U).
  for (std::size_t c = 0; c < dim_; ++c) kernels::apply_1q(data_.data() + c, dim_, n_, gate.q0, u);
  for (std::size_t r = 0; r < dim_; ++r) kernels::apply_1q(data_.data() + r * dim_, 1, n_, gate.q0, u_conj);
}

void DensityMatrix::depolarize(std::span<const std::size_t> qubits, double lambda) {
  if (lambda == 0.0) return;
  std::size_t mask = 0;
  for (std::size_t q : qubits) {
    if (q >= n_) throw ValidationError("depolarizing qubit out of range");
    mask |= kernels::bit_of(n_, q);
  }
  const double d = static_cast<double>(std::size_t{1} << qubits.size());
  // Enumerate the sub-configurations a of the masked bits.
  std::vector<std::size_t> sub;
  for (std::size_t a = mask;; a = (a - 1) & mask) {
    sub.push_back(a);
    if (a == 0) break;
  }
  std::vector<Complex> out(data_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      Complex mixed{0.0, 0.0};
      if ((r & mask) == (c & mask)) {
        const std::size_t r0 = r & ~mask;
        const std::size_t c0 = c & ~mask;
        for (std::size_t a : sub) mixed += data_[(r0 | a) * dim_ + (c0 | a)];
        mixed /= d;
      }
      out[r * dim_ + c] = (1.0 - lambda) * data_[r * dim_ + c] + lambda * mixed;
    }
  }
  data_ = std::move(out);
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i].real();
  return t;
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(dim_);
  for (std::size_t i = 0; i < dim_; ++i) p[i] = std::max(0.0, data_[i * dim_ + i].real());
  return p;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      worst = std::max(worst, std::abs(data_[r * dim_ + c] - std::conj(data_[c * dim_ + r])));
    }
  }
  return worst;
}

double DensityMatrix::fidelity_with(const Statevector &state) const {
  if (state.dim() != dim_) throw ValidationError("state dimension differs");
  Complex f{0.0, 0.0};
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) f += std::conj(state[r]) * data_[r * dim_ + c] * state[c];
  }
  return f.real();
}

DensityMatrix simulate_noisy(const Circuit &circuit, const NoiseModel &noise) {
  validate(noise);
  if (circuit.num_qubits() > kMaxDensityMatrixQubits) throw ValidationError("circuit too wide for density matrix");
  if (noise.num_qubits() < circuit.num_qubits()) throw ValidationError("noise model covers fewer qubits than circuit");
  DensityMatrix rho(circuit.num_qubits());
  const double lambda_cz = depolarizing_rate(noise.fcz, 4);
  for (const auto &g : circuit.gates()) {
    rho.apply(g);
    if (g.kind == GateKind::CZ) {
      const std::array<std::size_t, 2> pair = {g.q0, g.q1};
      rho.depolarize(pair, lambda_cz);
    } else if (g.kind != GateKind::RZ || !noise.rz_noiseless) {
      const std::array<std::size_t, 1> single = {g.q0};
      rho.depolarize(single, depolarizing_rate(noise.f1q[g.q0], 2));
    }
  }
  return rho;
}

ConfusionMatrix ConfusionMatrix::symmetric(std::span<const double> readout_fidelities) {
  ConfusionMatrix m;
  for (double f : readout_fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("readout fidelity must lie in [0, 1]");
    m.per_qubit.push_back({{{f, 1.0 - f}, {1.0 - f, f}}});
  }
  return m;
}

ConfusionMatrix ConfusionMatrix::identity(std::size_t num_qubits) {
  std::vector<double> ones(num_qubits, 1.0);
  return symmetric(ones);
}

void validate(const ConfusionMatrix &confusion) {
  if (confusion.per_qubit.empty()) throw ValidationError("empty confusion matrix");
  for (const auto &m : confusion.per_qubit) {
    for (std::size_t t = 0; t < 2; ++t) {
      if (m[0][t] < 0.0 || m[1][t] < 0.0 || m[0][t] > 1.0 || m[1][t] > 1.0) {
        throw ValidationError("confusion entries must lie in [0, 1]");
      }
      if (std::fabs(m[0][t] + m[1][t] - 1.0) > 1e-12) throw ValidationError("confusion columns must sum to 1");
    }
  }
}

std::vector<double> apply_readout_error(std::span<const double> probs, const ConfusionMatrix &confusion) {
  validate(confusion);
  check_distribution(probs);
  const std::size_t n = width_of(probs.size());
  if (n != confusion.num_qubits()) throw ValidationError("confusion width differs from distribution");
  std::vector<double> out(probs.begin(), probs.end());
  for (std::size_t q = 0; q < n; ++q) apply_real_1q(out, n, q, confusion.per_qubit[q]);
  return out;
}

std::vector<double> mitigate_readout(std::span<const double> empirical, const ConfusionMatrix &confusion) {
  validate(confusion);
  check_distribution(empirical);
  const std::size_t n = width_of(empirical.size());
  if (n != confusion.num_qubits()) throw ValidationError("confusion width differs from distribution");
  std::vector<double> out(empirical.begin(), empirical.end());
  for (std::size_t q = 0; q < n; ++q) {
    const auto &m = confusion.per_qubit[q];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (std::fabs(det) < 1e-12) throw ValidationError("confusion matrix is singular");
    const std::array<std::array<double, 2>, 2> inv = {{{m[1][1] / det, -m[0][1] / det},
                                                       {-m[1][0] / det, m[0][0] / det}}};
    apply_real_1q(out, n, q, inv);
  }
  double total = 0.0;
  for (auto &p : out) {
    p = std::max(0.0, p);
    total += p;
  }
  if (total <= 0.0) throw ValidationError("mitigated distribution vanished");
  for (auto &p : out) p /= total;
  return out;
}

double predict_circuit_fidelity(const GateTally &tally, const NoiseModel &noise) {
  validate(noise);
  if (noise.num_qubits() < tally.num_qubits) throw ValidationError("noise model covers fewer qubits than tally");
  double f = std::pow(noise.fcz, static_cast<double>(tally.cz));
  for (const auto &[kind, counts] : tally.single_qubit) {
    if (kind == GateKind::RZ && noise.rz_noiseless) continue;
    for (std::size_t q = 0; q < counts.size(); ++q) f *= std::pow(noise.f1q[q], static_cast<double>(counts[q]));
  }
  return f;
}

}  // namespace qaoa
