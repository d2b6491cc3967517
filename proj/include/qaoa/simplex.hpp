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

#ifndef QAOA_SIMPLEX_HPP
#define QAOA_SIMPLEX_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace qaoa {

struct SimplexOptions {
  double initial_step = 0.39269908169872414;  // pi / 8
  double xtol = 1e-4;                         // stop when max |x_i - x_best| < xtol
  double ftol = 0.0;                          // optional: stop when f spread < ftol
  std::size_t max_evals = std::numeric_limits<std::size_t>::max();
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct SimplexResult {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
  bool converged = false;
};

/// Downhill simplex minimization. The initial simplex is x0 plus one
/// `initial_step` offset per axis. Exceptions thrown by `f` propagate.
SimplexResult minimize_simplex(const std::function<double(std::span<const double>)> &f, std::span<const double> x0,
                               const SimplexOptions &options);

}  // namespace qaoa

#endif  // QAOA_SIMPLEX_HPP
