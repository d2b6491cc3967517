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

#include "qaoa/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qaoa/errors.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

ShotRecord::ShotRecord(std::size_t width, std::vector<std::uint64_t> counts) : width_(width), counts_(std::move(counts)) {
  if (width == 0 || width > kMaxStatevectorQubits) throw ValidationError("record width out of range");
  if (counts_.size() != (std::size_t{1} << width)) throw ValidationError("count vector length is not 2^width");
  for (auto c : counts_) shots_ += c;
}

std::uint64_t ShotRecord::count(std::string_view bits) const {
  Selection s = Selection::from_string(bits);
  if (s.width() != width_) throw ValidationError("bit string width differs from record");
  return counts_[s.index()];
}

std::vector<double> ShotRecord::empirical_distribution() const {
  if (shots_ == 0) throw ValidationError("empty shot record");
  std::vector<double> p(counts_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(counts_[i]) / static_cast<double>(shots_);
  return p;
}

std::string ShotRecord::to_csv() const {
  std::ostringstream os;
  os << "bitstring,count\n";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] != 0) os << bit_string(i, width_) << ',' << counts_[i] << '\n';
  }
  return os.str();
}

ShotRecord ShotRecord::from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != "bitstring,count") throw ValidationError("missing CSV header");
  std::size_t width = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("malformed CSV row");
    Selection s = Selection::from_string(std::string_view(line).substr(0, comma));
    if (width == 0) width = s.width();
    if (s.width() != width) throw ValidationError("inconsistent bit string widths");
    try {
      rows.emplace_back(s.index(), std::stoull(line.substr(comma + 1)));
    } catch (const std::exception &) {
      throw ValidationError("malformed count");
    }
  }
  if (width == 0) throw ValidationError("empty record");
  std::vector<std::uint64_t> counts(std::size_t{1} << width, 0);
  for (auto [index, c] : rows) counts[index] += c;
  return ShotRecord(width, std::move(counts));
}

ShotRecord sample(std::span<const double> probs, std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw ValidationError("shots must be at least 1");
  std::size_t width = 0;
  while ((std::size_t{1} << width) < probs.size()) ++width;
  if (width == 0 || (std::size_t{1} << width) != probs.size()) throw ValidationError("distribution length is not 2^n");
  std::vector<double> cdf(probs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < -1e-12) throw ValidationError("invalid distribution entry");
    total += std::max(0.0, probs[i]);
    cdf[i] = total;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ValidationError("distribution does not sum to 1");
  Rng rng(seed);
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Skip trailing zero-probability states that share the final CDF value.
    std::size_t index = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
    while (index > 0 && probs[index] <= 0.0) --index;
    ++counts[index];
  }
  return ShotRecord(width, std::move(counts));
}

CostEstimate estimate_from_distribution(std::span<const double> probs, const IsingModel &model, Shots shots) {
  validate(model);
  const std::size_t n = model.n;
  if (probs.size() != (std::size_t{1} << n)) throw ValidationError("distribution width differs from model");
  CostEstimate out;
  out.shots = shots;
  out.state_probs.assign(probs.begin(), probs.end());
  out.z_single.assign(n, 0.0);
  for (const auto &[key, _] : model.J) out.z_pairs.push_back({key, 0.0});
  for (std::size_t index = 0; index < probs.size(); ++index) {
    const double p = probs[index];
    if (p == 0.0) continue;
    auto s = [&](std::size_t q) { return ((index >> (n - 1 - q)) & 1U) ? 1.0 : -1.0; };
    for (std::size_t q = 0; q < n; ++q) out.z_single[q] += p * s(q);
    for (auto &[key, z] : out.z_pairs) z += p * s(key.first) * s(key.second);
  }
  double f = 0.0;
  for (std::size_t q = 0; q < n; ++q) f += model.h[q].to_double() * out.z_single[q];
  std::size_t k = 0;
  for (const auto &[key, value] : model.J) f += value.to_double() * out.z_pairs[k++].second;
  out.F = f;
  return out;
}

CostEstimate estimate(const ShotRecord &record, const IsingModel &model, const std::optional<ConfusionMatrix> &confusion) {
  if (record.width() != model.n) throw ValidationError("record width differs from model");
  auto probs = record.empirical_distribution();
  if (confusion) probs = mitigate_readout(probs, *confusion);
  return estimate_from_distribution(probs, model, record.shots());
}

Backend Backend::noisy(const NoiseModel &noise) {
  validate(noise);
  Backend b;
  b.noise = noise;
  if (std::any_of(noise.fro.begin(), noise.fro.end(), [](double f) { return f != 1.0; })) {
    b.confusion = ConfusionMatrix::symmetric(noise.fro);
  }
  return b;
}

std::string Backend::descriptor() const {
  nlohmann::ordered_json doc;
  doc["kind"] = noise ? "noisy" : "ideal";
  if (noise) doc["noise"] = nlohmann::json::parse(serialize_noise(*noise));
  doc["readout_mitigation"] = confusion.has_value();
  return doc.dump();
}

std::vector<double> state_probabilities(const IsingModel &model, const QaoaAngles &angles, const Backend &backend) {
  const Circuit circuit = build_qaoa_circuit(model, angles);
  if (backend.noise) return simulate_noisy(circuit, *backend.noise).probabilities();
  return exact_probabilities(run_circuit(circuit));
}

CostEstimate evaluate_angles(const IsingModel &model, const QaoaAngles &angles, const Backend &backend, Shots shots,
                             std::uint64_t seed) {
  auto probs = state_probabilities(model, angles, backend);
  // Absorb rounding so the distribution sums to one before sampling.
  double total = 0.0;
  for (double p : probs) total += p;
  for (auto &p : probs) p /= total;
  if (backend.confusion) probs = apply_readout_error(probs, *backend.confusion);
  if (shots) return estimate(sample(probs, *shots, seed), model, backend.confusion);
  if (backend.confusion) probs = mitigate_readout(probs, *backend.confusion);
  return estimate_from_distribution(probs, model, kExactShots);
}

double probability_of(const CostEstimate &estimate, const std::set<Selection> &states) {
  double p = 0.0;
  for (const auto &s : states) {
    if (s.index() >= estimate.state_probs.size()) throw ValidationError("state outside distribution");
    p += estimate.state_probs[s.index()];
  }
  return p;
}

std::string estimate_to_json(const CostEstimate &estimate, std::uint64_t seed, const Backend &backend) {
  nlohmann::ordered_json doc;
  doc["F"] = estimate.F;
  doc["z_single"] = estimate.z_single;
  doc["z_pairs"] = nlohmann::ordered_json::array();
  for (const auto &[key, z] : estimate.z_pairs) {
    doc["z_pairs"].push_back(nlohmann::ordered_json::array({key.first, key.second, z}));
  }
  doc["state_probs"] = estimate.state_probs;
  if (estimate.shots) {
    doc["shots"] = *estimate.shots;
  } else {
    doc["shots"] = "exact";
  }
  doc["seed"] = seed;
  doc["rng"] = kRngAlgorithm;
  doc["backend"] = nlohmann::json::parse(backend.descriptor());
  return doc.dump();
}

}  // namespace qaoa
