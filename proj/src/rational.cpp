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

#include "qaoa/rational.hpp"

#include <cmath>
#include <limits>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ValidationError("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_double(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw ValidationError("non-finite coefficient");
  for (std::int64_t den = 1; den <= max_den; den *= 2) {
    double scaled = value * static_cast<double>(den);
    if (std::fabs(scaled) > 9.0e15) break;
    if (scaled == std::floor(scaled)) return Rational(static_cast<std::int64_t>(scaled), den);
  }
  throw ValidationError("coefficient is not an exact binary fraction");
}

Rational &Rational::operator+=(const Rational &o) {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  num_ = checked(n);
  den_ = checked(d);
  return *this;
}

Rational &Rational::operator*=(const Rational &o) {
  // Cross-reduce first to keep intermediates small.
  std::int64_t g1 = std::gcd(num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  num_ = checked(static_cast<__int128>(num_ / g1) * (o.num_ / g2));
  den_ = checked(static_cast<__int128>(den_ / g2) * (o.den_ / g1));
  reduce();
  return *this;
}

Rational &Rational::operator/=(const Rational &o) {
  if (o.num_ == 0) throw ValidationError("rational division by zero");
  return *this *= Rational(o.den_, o.num_);
}

}  // namespace qaoa
