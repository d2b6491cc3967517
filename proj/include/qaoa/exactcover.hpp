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

#ifndef QAOA_EXACTCOVER_HPP
#define QAOA_EXACTCOVER_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qaoa {

/// Largest subset count accepted by the exhaustive enumerators.
inline constexpr std::size_t kMaxEnumerationWidth = 24;

/// A choice of subsets, one bit per subset. Bit strings render with subset 1
/// leftmost, so "10" selects S_1 only. The packed index uses the same order
/// (subset 1 is the most significant bit) and doubles as the statevector
/// basis index.
class Selection {
 public:
  Selection(std::size_t width, std::uint64_t index);

  static Selection from_string(std::string_view bits);

  std::size_t width() const { return width_; }
  std::uint64_t index() const { return index_; }
  bool bit(std::size_t subset) const { return (index_ >> (width_ - 1 - subset)) & 1U; }
  std::string to_string() const;

  friend auto operator<=>(const Selection &, const Selection &) = default;

 private:
  std::size_t width_;
  std::uint64_t index_;
};

std::string bit_string(std::uint64_t index, std::size_t width);

/// Universe X plus the ordered subsets S_1..S_n. Subset i maps to qubit i.
struct ExactCoverInstance {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<std::string>> subsets;

  std::size_t num_subsets() const { return subsets.size(); }

  /// Element positions of each subset, in subset order.
  std::vector<std::vector<std::size_t>> subset_indices() const;

  friend bool operator==(const ExactCoverInstance &, const ExactCoverInstance &) = default;
};

/// Checks the instance invariants, throwing ValidationError on the first
/// violation.
void validate(const ExactCoverInstance &instance);

ExactCoverInstance make_instance(std::string name, std::vector<std::string> elements,
                                 std::vector<std::vector<std::string>> subsets);

ExactCoverInstance parse_instance(std::string_view text);
std::string serialize_instance(const ExactCoverInstance &instance);

/// The four two-subset problems: 'A'..'D'.
ExactCoverInstance builtin_problem(char id);
ExactCoverInstance builtin_problem(std::string_view id);

/// True when the selected subsets are pairwise disjoint and cover X.
bool is_exact_cover(const ExactCoverInstance &instance, const Selection &selection);

/// Every exact cover, found by enumerating all 2^n selections.
std::set<Selection> brute_force_covers(const ExactCoverInstance &instance);

}  // namespace qaoa

#endif  // QAOA_EXACTCOVER_HPP
