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

#include "qaoa/exactcover.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include <json.hpp>

#include "qaoa/errors.hpp"

namespace qaoa {

Selection::Selection(std::size_t width, std::uint64_t index) : width_(width), index_(index) {
  if (width == 0 || width > 63) throw ValidationError("selection width out of range");
  if (index >> width) throw ValidationError("selection index exceeds width");
}

Selection Selection::from_string(std::string_view bits) {
  if (bits.empty() || bits.size() > 63) throw ValidationError("bad bit string length");
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ValidationError("bit string must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return Selection(bits.size(), index);
}

std::string bit_string(std::uint64_t index, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t q = 0; q < width; ++q) {
    if ((index >> (width - 1 - q)) & 1U) out[q] = '1';
  }
  return out;
}

std::string Selection::to_string() const { return bit_string(index_, width_); }

std::vector<std::vector<std::size_t>> ExactCoverInstance::subset_indices() const {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < elements.size(); ++i) position.emplace(elements[i], i);
  std::vector<std::vector<std::size_t>> out;
  out.reserve(subsets.size());
  for (const auto &subset : subsets) {
    std::vector<std::size_t> idx;
    for (const auto &label : subset) {
      auto it = position.find(label);
      if (it == position.end()) throw ValidationError("unknown element '" + label + "'");
      idx.push_back(it->second);
    }
    out.push_back(std::move(idx));
  }
  return out;
}

void validate(const ExactCoverInstance &instance) {
  if (instance.subsets.empty()) throw ValidationError("instance needs at least one subset");
  if (instance.subsets.size() > 63) throw ValidationError("too many subsets");
  std::vector<std::string> sorted = instance.elements;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate element label");
  }
  for (const auto &subset : instance.subsets) {
    std::vector<std::string> s = subset;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw ValidationError("element repeated within a subset");
    }
    for (const auto &label : subset) {
      if (!std::binary_search(sorted.begin(), sorted.end(), label)) {
        throw ValidationError("unknown element '" + label + "'");
      }
    }
  }
}

ExactCoverInstance make_instance(std::string name, std::vector<std::string> elements,
                                 std::vector<std::vector<std::string>> subsets) {
  ExactCoverInstance out{std::move(name), std::move(elements), std::move(subsets)};
  validate(out);
  return out;
}

ExactCoverInstance parse_instance(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ValidationError(std::string("malformed instance document: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("instance document must be an object");
  for (const auto &[key, _] : doc.items()) {
    if (key != "name" && key != "elements" && key != "subsets") {
      throw ValidationError("unexpected key '" + key + "'");
    }
  }
  ExactCoverInstance out;
  try {
    if (doc.contains("name")) out.name = doc.at("name").get<std::string>();
    out.elements = doc.at("elements").get<std::vector<std::string>>();
    out.subsets = doc.at("subsets").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("malformed instance document: ") + e.what());
  }
  validate(out);
  return out;
}

std::string serialize_instance(const ExactCoverInstance &instance) {
  nlohmann::ordered_json doc;
  if (!instance.name.empty()) doc["name"] = instance.name;
  doc["elements"] = instance.elements;
  doc["subsets"] = nlohmann::ordered_json::array();
  for (const auto &subset : instance.subsets) doc["subsets"].push_back(subset);
  return doc.dump(2);
}

ExactCoverInstance builtin_problem(char id) {
  std::vector<std::string> x = {"x1", "x2"};
  switch (std::toupper(static_cast<unsigned char>(id))) {
    case 'A':
      return make_instance("A", x, {{"x1", "x2"}, {"x1"}});
    case 'B':
      return make_instance("B", x, {{"x1", "x2"}, {}});
    case 'C':
      return make_instance("C", x, {{"x1"}, {"x2"}});
    case 'D':
      return make_instance("D", x, {{"x1", "x2"}, {"x1", "x2"}});
    default:
      throw ValidationError(std::string("unknown built-in problem '") + id + "'");
  }
}

ExactCoverInstance builtin_problem(std::string_view id) {
  if (id.size() != 1) throw ValidationError("unknown built-in problem '" + std::string(id) + "'");
  return builtin_problem(id.front());
}

bool is_exact_cover(const ExactCoverInstance &instance, const Selection &selection) {
  if (selection.width() != instance.num_subsets()) {
    throw ValidationError("selection width does not match subset count");
  }
  const auto members = instance.subset_indices();
  std::vector<int> hits(instance.elements.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!selection.bit(i)) continue;
    for (std::size_t e : members[i]) ++hits[e];
  }
  return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

std::set<Selection> brute_force_covers(const ExactCoverInstance &instance) {
  const std::size_t n = instance.num_subsets();
  if (n > kMaxEnumerationWidth) throw ValidationError("instance too large for enumeration");
  const auto members = instance.subset_indices();
  std::set<Selection> covers;
  std::vector<int> hits(instance.elements.size());
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
    std::fill(hits.begin(), hits.end(), 0);
    bool overlap = false;
    for (std::size_t i = 0; i < n && !overlap; ++i) {
      if (!((index >> (n - 1 - i)) & 1U)) continue;
      for (std::size_t e : members[i]) {
        if (++hits[e] > 1) {
          overlap = true;
          break;
        }
      }
    }
    if (overlap) continue;
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) {
      covers.emplace(n, index);
    }
  }
  return covers;
}

}  // namespace qaoa
