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

#ifndef QAOA_ISING_HPP
#define QAOA_ISING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaoa/exactcover.hpp"
#include "qaoa/rational.hpp"

namespace qaoa {

/// Spin convention used everywhere: s_i = +1 exactly when bit i is 1
/// (subset i selected), s_i = -1 when bit i is 0.
inline int spin(const Selection &selection, std::size_t i) { return selection.bit(i) ? 1 : -1; }

/// C = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j, plus a constant offset that is
/// carried along but never part of the cost function.
struct IsingModel {
  std::size_t n = 0;
  std::vector<Rational> h;
  std::map<std::pair<std::size_t, std::size_t>, Rational> J;
  Rational offset;

  friend bool operator==(const IsingModel &, const IsingModel &) = default;
};

void validate(const IsingModel &model);

/// Squared-constraint penalty sum_u (1 - sum_{i: u in S_i} b_i)^2 with
/// b_i = (1 + s_i) / 2, expanded into fields, couplings and an offset. Exact
/// covers are precisely the selections of total energy zero.
IsingModel map_to_ising(const ExactCoverInstance &instance);

struct TwoSubsetCoefficients {
  Rational h1;
  Rational h2;
  Rational J;
};

/// Closed-form two-spin coefficients h_k = J - 2 c_k. When `share_element`
/// is given the coupling criterion is enforced: J > min(c1, c2) for
/// overlapping subsets, J == 0 for disjoint ones. Without it the values are
/// substituted unchecked.
TwoSubsetCoefficients two_subset_coefficients(std::int64_t c1, std::int64_t c2, Rational J,
                                              std::optional<bool> share_element = std::nullopt);

/// Two-spin model for a two-subset instance using the closed form above.
IsingModel two_subset_model(const ExactCoverInstance &instance, Rational J);

/// Smallest m in {1, 2, 4, ...} making every energy (offset excluded) an
/// integer.
std::int64_t integer_spectrum_multiplier(const IsingModel &model);

/// Scales all coefficients, offset included, by integer_spectrum_multiplier.
IsingModel normalize_integer_spectrum(const IsingModel &model);

Rational energy_exact(const IsingModel &model, const Selection &selection);
double energy(const IsingModel &model, const Selection &selection);

/// Energy of every basis state, indexed by Selection::index.
std::vector<double> energy_spectrum(const IsingModel &model);

struct GroundStates {
  Rational energy;
  std::set<Selection> states;
};

GroundStates ground_states(const IsingModel &model);

/// Sum of |h_i| + |J_ij|, the scale that bounds |F|.
double coefficient_l1(const IsingModel &model);

std::string serialize_model(const IsingModel &model);
IsingModel parse_model(std::string_view text);

}  // namespace qaoa

#endif  // QAOA_ISING_HPP
