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

#include "qaoa/ising.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qaoa/errors.hpp"

namespace qaoa {

void validate(const IsingModel &model) {
  if (model.n == 0 || model.n > 63) throw ValidationError("spin count out of range");
  if (model.h.size() != model.n) throw ValidationError("field vector length differs from n");
  for (const auto &[key, _] : model.J) {
    if (key.first >= key.second) throw ValidationError("couplings must be keyed by i < j");
    if (key.second >= model.n) throw ValidationError("coupling index out of range");
  }
}

IsingModel map_to_ising(const ExactCoverInstance &instance) {
  validate(instance);
  const std::size_t n = instance.num_subsets();
  const auto members = instance.subset_indices();

  std::vector<std::int64_t> k(instance.elements.size(), 0);
  for (const auto &subset : members) {
    for (std::size_t e : subset) ++k[e];
  }

  IsingModel model;
  model.n = n;
  model.h.assign(n, Rational(0));
  const Rational half(1, 2);
  const Rational quarter(1, 4);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e : members[i]) model.h[i] += Rational(k[e]) * half - Rational(1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::int64_t shared = 0;
      for (std::size_t e : members[i]) {
        if (std::find(members[j].begin(), members[j].end(), e) != members[j].end()) ++shared;
      }
      if (shared != 0) model.J[{i, j}] = Rational(shared) * half;
    }
  }
  for (std::int64_t ku : k) {
    Rational d = Rational(1) - Rational(ku) * half;
    model.offset += d * d + Rational(ku) * quarter;
  }
  return model;
}

TwoSubsetCoefficients two_subset_coefficients(std::int64_t c1, std::int64_t c2, Rational J,
                                              std::optional<bool> share_element) {
  if (c1 < 0 || c2 < 0) throw ValidationError("subset sizes must be nonnegative");
  if (share_element.has_value()) {
    if (*share_element && !(J > Rational(std::min(c1, c2)))) {
      throw ValidationError("coupling must exceed min(c1, c2) for overlapping subsets");
    }
    if (!*share_element && !J.is_zero()) {
      throw ValidationError("coupling must be zero for disjoint subsets");
    }
  }
  return {J - Rational(2 * c1), J - Rational(2 * c2), J};
}

IsingModel two_subset_model(const ExactCoverInstance &instance, Rational J) {
  validate(instance);
  if (instance.num_subsets() != 2) throw ValidationError("closed form needs exactly two subsets");
  const auto members = instance.subset_indices();
  bool shared = std::any_of(members[0].begin(), members[0].end(), [&](std::size_t e) {
    return std::find(members[1].begin(), members[1].end(), e) != members[1].end();
  });
  auto c = two_subset_coefficients(static_cast<std::int64_t>(members[0].size()),
                                   static_cast<std::int64_t>(members[1].size()), J, shared);
  IsingModel model;
  model.n = 2;
  model.h = {c.h1, c.h2};
  if (!c.J.is_zero()) model.J[{0, 1}] = c.J;
  return model;
}

Rational energy_exact(const IsingModel &model, const Selection &selection) {
  if (selection.width() != model.n) throw ValidationError("selection width does not match model");
  Rational e;
  for (std::size_t i = 0; i < model.n; ++i) {
    e += spin(selection, i) > 0 ? model.h[i] : -model.h[i];
  }
  for (const auto &[key, value] : model.J) {
    e += spin(selection, key.first) * spin(selection, key.second) > 0 ? value : -value;
  }
  return e;
}

double energy(const IsingModel &model, const Selection &selection) {
  return energy_exact(model, selection).to_double();
}

std::vector<double> energy_spectrum(const IsingModel &model) {
  validate(model);
  if (model.n > kMaxEnumerationWidth) throw ValidationError("model too large for enumeration");
  const std::size_t n = model.n;
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = model.h[i].to_double();
  std::vector<double> out(std::size_t{1} << n);
  for (std::uint64_t index = 0; index < out.size(); ++index) {
    auto s = [&](std::size_t q) { return ((index >> (n - 1 - q)) & 1U) ? 1.0 : -1.0; };
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += h[i] * s(i);
    for (const auto &[key, value] : model.J) e += value.to_double() * s(key.first) * s(key.second);
    out[index] = e;
  }
  return out;
}

std::int64_t integer_spectrum_multiplier(const IsingModel &model) {
  validate(model);
  if (model.n > kMaxEnumerationWidth) throw ValidationError("model too large for enumeration");
  std::vector<Rational> energies;
  energies.reserve(std::size_t{1} << model.n);
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << model.n); ++index) {
    energies.push_back(energy_exact(model, Selection(model.n, index)));
  }
  for (std::int64_t m = 1; m <= (std::int64_t{1} << 30); m *= 2) {
    bool all_integer = std::all_of(energies.begin(), energies.end(),
                                   [&](const Rational &e) { return (e * Rational(m)).is_integer(); });
    if (all_integer) return m;
  }
  throw ValidationError("coefficients cannot be scaled to an integer spectrum");
}

IsingModel normalize_integer_spectrum(const IsingModel &model) {
  const Rational m(integer_spectrum_multiplier(model));
  IsingModel out = model;
  for (auto &h : out.h) h *= m;
  for (auto &[_, value] : out.J) value *= m;
  out.offset *= m;
  return out;
}

GroundStates ground_states(const IsingModel &model) {
  validate(model);
  if (model.n > kMaxEnumerationWidth) throw ValidationError("model too large for enumeration");
  GroundStates out;
  bool first = true;
  for (std::uint64_t index = 0; index < (std::uint64_t{1} << model.n); ++index) {
    Selection sel(model.n, index);
    Rational e = energy_exact(model, sel);
    if (first || e < out.energy) {
      out.energy = e;
      out.states.clear();
      first = false;
    }
    if (e == out.energy) out.states.insert(sel);
  }
  return out;
}

double coefficient_l1(const IsingModel &model) {
  double total = 0.0;
  for (const auto &h : model.h) total += std::fabs(h.to_double());
  for (const auto &[_, value] : model.J) total += std::fabs(value.to_double());
  return total;
}

std::string serialize_model(const IsingModel &model) {
  nlohmann::ordered_json doc;
  doc["n"] = model.n;
  doc["h"] = nlohmann::ordered_json::array();
  for (const auto &h : model.h) doc["h"].push_back(h.to_double());
  doc["J"] = nlohmann::ordered_json::array();
  for (const auto &[key, value] : model.J) {
    doc["J"].push_back(nlohmann::ordered_json::array({key.first, key.second, value.to_double()}));
  }
  doc["offset"] = model.offset.to_double();
  return doc.dump();
}

IsingModel parse_model(std::string_view text) {
  IsingModel model;
  try {
    auto doc = nlohmann::json::parse(text);
    model.n = doc.at("n").get<std::size_t>();
    for (double h : doc.at("h").get<std::vector<double>>()) model.h.push_back(Rational::from_double(h));
    for (const auto &entry : doc.at("J")) {
      if (!entry.is_array() || entry.size() != 3) throw ValidationError("coupling entries are [i, j, value]");
      auto i = entry.at(0).get<std::size_t>();
      auto j = entry.at(1).get<std::size_t>();
      if (i == j) throw ValidationError("diagonal coupling");
      if (i > j) std::swap(i, j);
      Rational value = Rational::from_double(entry.at(2).get<double>());
      if (!model.J.emplace(std::make_pair(i, j), value).second) {
        throw ValidationError("duplicate coupling");
      }
    }
    if (doc.contains("offset")) model.offset = Rational::from_double(doc.at("offset").get<double>());
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
  validate(model);
  return model;
}

}  // namespace qaoa
