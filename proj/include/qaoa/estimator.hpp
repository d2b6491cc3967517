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

#ifndef QAOA_ESTIMATOR_HPP
#define QAOA_ESTIMATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaoa/ising.hpp"
#include "qaoa/noise.hpp"
#include "qaoa/simulator.hpp"

namespace qaoa {

/// Shot count per evaluation; nullopt means exact expectation values.
using Shots = std::optional<std::size_t>;
inline constexpr Shots kExactShots = std::nullopt;

/// Measurement counts indexed by basis state.
class ShotRecord {
 public:
  ShotRecord(std::size_t width, std::vector<std::uint64_t> counts);

  std::size_t width() const { return width_; }
  std::uint64_t shots() const { return shots_; }
  const std::vector<std::uint64_t> &counts() const { return counts_; }
  std::uint64_t count(std::string_view bits) const;
  std::vector<double> empirical_distribution() const;

  /// `bitstring,count` rows for every nonzero count, header first.
  std::string to_csv() const;
  static ShotRecord from_csv(std::string_view text);

 private:
  std::size_t width_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t shots_ = 0;
};

/// Multinomial draw by inverse-CDF lookup of one Rng::uniform per shot.
ShotRecord sample(std::span<const double> probs, std::size_t shots, std::uint64_t seed);

struct CostEstimate {
  double F = 0.0;
  std::vector<double> z_single;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> z_pairs;  // model.J order
  std::vector<double> state_probs;
  Shots shots;
};

/// Expectations under s = +1 for bit 1, from a (possibly mitigated)
/// distribution. No readout handling.
CostEstimate estimate_from_distribution(std::span<const double> probs, const IsingModel &model, Shots shots);

/// Empirical distribution, mitigated first when a confusion matrix is given.
CostEstimate estimate(const ShotRecord &record, const IsingModel &model,
                      const std::optional<ConfusionMatrix> &confusion = std::nullopt);

struct Backend {
  std::optional<NoiseModel> noise;           // nullopt: ideal statevector
  std::optional<ConfusionMatrix> confusion;  // readout error applied, then mitigated

  static Backend ideal() { return {}; }
  /// Depolarizing gates plus symmetric readout error from the model.
  static Backend noisy(const NoiseModel &noise);

  std::string descriptor() const;
};

/// Probabilities of the QAOA state before measurement.
std::vector<double> state_probabilities(const IsingModel &model, const QaoaAngles &angles, const Backend &backend);

/// simulate -> readout error -> sample -> mitigate -> estimate. Exact shots
/// skip sampling only.
CostEstimate evaluate_angles(const IsingModel &model, const QaoaAngles &angles, const Backend &backend, Shots shots,
                             std::uint64_t seed);

/// Total probability of the given basis states.
double probability_of(const CostEstimate &estimate, const std::set<Selection> &states);

std::string estimate_to_json(const CostEstimate &estimate, std::uint64_t seed, const Backend &backend);

}  // namespace qaoa

#endif  // QAOA_ESTIMATOR_HPP
