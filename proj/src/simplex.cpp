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

#include "qaoa/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qaoa/errors.hpp"

namespace qaoa {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

std::vector<double> affine(const std::vector<double> &c, const std::vector<double> &x, double t) {
  // c + t (x - c)
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] + t * (x[i] - c[i]);
  return out;
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(std::span<const double>)> &f, std::span<const double> x0,
                               const SimplexOptions &opt) {
  const std::size_t d = x0.size();
  if (d == 0) throw ValidationError("simplex minimization needs dimension >= 1");

  SimplexResult result;
  auto eval = [&](const std::vector<double> &x) {
    ++result.evals;
    double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  auto budget_left = [&] { return result.evals < opt.max_evals; };

  std::vector<Vertex> simplex;
  simplex.reserve(d + 1);
  auto track = [&](const Vertex &v) {
    if (v.f < result.f) {
      result.f = v.f;
      result.x = v.x;
    }
  };
  {
    std::vector<double> x(x0.begin(), x0.end());
    simplex.push_back({x, eval(x)});
    track(simplex.back());
  }
  for (std::size_t i = 0; i < d && budget_left(); ++i) {
    std::vector<double> x(x0.begin(), x0.end());
    x[i] += opt.initial_step;
    simplex.push_back({x, eval(x)});
    track(simplex.back());
  }
  if (simplex.size() < d + 1) return result;

  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
    double diameter = 0.0;
    for (std::size_t k = 1; k <= d; ++k) {
      for (std::size_t i = 0; i < d; ++i) diameter = std::max(diameter, std::fabs(simplex[k].x[i] - simplex[0].x[i]));
    }
    const bool f_flat = opt.ftol > 0.0 && std::fabs(simplex[d].f - simplex[0].f) < opt.ftol;
    if (diameter < opt.xtol || f_flat) {
      result.converged = true;
      break;
    }
    if (!budget_left()) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(d);
    }
    Vertex &worst = simplex[d];

    Vertex reflected{affine(centroid, worst.x, -opt.reflection), 0.0};
    reflected.f = eval(reflected.x);
    track(reflected);

    if (reflected.f < simplex[0].f) {
      if (!budget_left()) {
        worst = std::move(reflected);
        continue;
      }
      Vertex expanded{affine(centroid, worst.x, -opt.reflection * opt.expansion), 0.0};
      expanded.f = eval(expanded.x);
      track(expanded);
      worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < simplex[d - 1].f) {
      worst = std::move(reflected);
      continue;
    }
    if (!budget_left()) break;

    bool accepted = false;
    if (reflected.f < worst.f) {
      Vertex outside{affine(centroid, reflected.x, opt.contraction), 0.0};
      outside.f = eval(outside.x);
      track(outside);
      if (outside.f <= reflected.f) {
        worst = std::move(outside);
        accepted = true;
      }
    } else {
      Vertex inside{affine(centroid, worst.x, opt.contraction), 0.0};
      inside.f = eval(inside.x);
      track(inside);
      if (inside.f < worst.f) {
        worst = std::move(inside);
        accepted = true;
      }
    }
    if (accepted) continue;

    for (std::size_t k = 1; k <= d; ++k) {
      if (!budget_left()) break;
      simplex[k].x = affine(simplex[0].x, simplex[k].x, opt.shrink);
      simplex[k].f = eval(simplex[k].x);
      track(simplex[k]);
    }
  }
  return result;
}

}  // namespace qaoa
