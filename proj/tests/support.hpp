// Copyright 2026 The cakecut Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Random generators and independent oracles shared by the test binaries.

#include "cakecut/analysis.hpp"
#include "cakecut/nash.hpp"
#include "cakecut/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cakecut::testing {

inline Rational random_point(std::mt19937_64& rng, long den) {
  std::uniform_int_distribution<long> d(0, den);
  return make_rational(d(rng), den);
}

/// Piecewise-constant type with up to `max_segments` pieces on a 1/den lattice.
inline Valuation random_valuation(std::mt19937_64& rng, int max_segments = 6, long den = 60) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::uniform_int_distribution<long> dens(0, 5);
  const int k = count(rng);
  std::vector<Rational> breaks{Rational(0), Rational(1)};
  while (static_cast<int>(breaks.size()) < k + 1) {
    Rational p = random_point(rng, den);
    if (std::find(breaks.begin(), breaks.end(), p) == breaks.end()) breaks.push_back(p);
  }
  std::sort(breaks.begin(), breaks.end());
  for (;;) {
    std::vector<Rational> d;
    bool positive = false;
    for (int i = 0; i < k; ++i) {
      d.push_back(Rational(dens(rng)));
      positive = positive || d.back() > 0;
    }
    if (positive) return Valuation::from_densities(breaks, d);
  }
}

/// Types sharing one refinement of at most `cells` cells, all densities positive or zero.
inline std::vector<Valuation> random_profile_on_cells(std::mt19937_64& rng, std::size_t agents, int cells) {
  std::vector<Rational> breaks{Rational(0), Rational(1)};
  while (static_cast<int>(breaks.size()) < cells + 1) {
    Rational p = random_point(rng, 40);
    if (std::find(breaks.begin(), breaks.end(), p) == breaks.end()) breaks.push_back(p);
  }
  std::sort(breaks.begin(), breaks.end());
  std::uniform_int_distribution<long> dens(0, 4);
  std::vector<Valuation> out;
  while (out.size() < agents) {
    std::vector<Rational> d;
    bool positive = false;
    for (int c = 0; c < cells; ++c) {
      d.push_back(Rational(dens(rng)));
      positive = positive || d.back() > 0;
    }
    if (positive) out.push_back(Valuation::from_densities(breaks, d));
  }
  return out;
}

/// Closed-form CDF in double precision, written against the segment list only.
inline double cdf_oracle(const Valuation& v, double x) {
  double acc = 0;
  for (const Segment& s : v.segments()) {
    const double a = to_double(s.start), b = to_double(s.end), d = to_double(s.density);
    if (x > a) acc += d * (std::min(x, b) - a);
  }
  return acc;
}

/// Midpoint quadrature of the density.
inline double quadrature_oracle(const Valuation& v, double a, double b, int steps = 200000) {
  auto density = [&](double x) {
    for (const Segment& s : v.segments())
      if (x >= to_double(s.start) && x < to_double(s.end)) return to_double(s.density);
    return 0.0;
  };
  const double w = (b - a) / steps;
  double acc = 0;
  for (int i = 0; i < steps; ++i) acc += density(a + (i + 0.5) * w) * w;
  return acc;
}

inline std::vector<Strategy> truthful(const std::vector<Valuation>& types) {
  std::vector<Strategy> s;
  for (const Valuation& v : types) s.push_back(Strategy{v});
  return s;
}

inline Valuation blue() { return three_block_type(); }

/// Exhaustive search for the largest Nash product over fractions on a 1/steps
/// lattice. Cost is (simplex points per cell)^cells.
inline double brute_force_nash_product(const std::vector<std::vector<double>>& v, int steps) {
  const std::size_t agents = v.size(), cells = v.front().size();
  // Every way to split one unit of a cell among the agents.
  std::vector<std::vector<int>> splits;
  std::vector<int> cur(agents, 0);
  auto fill = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == agents) {
      cur[i] = left;
      splits.push_back(cur);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  fill(fill, 0, steps);
  double best = 0;
  std::vector<double> u(agents, 0);
  auto walk = [&](auto&& self, std::size_t c) -> void {
    if (c == cells) {
      double prod = 1;
      for (double x : u) prod *= x;
      best = std::max(best, prod);
      return;
    }
    for (const auto& sp : splits) {
      for (std::size_t i = 0; i < agents; ++i) u[i] += v[i][c] * sp[i] / steps;
      self(self, c + 1);
      for (std::size_t i = 0; i < agents; ++i) u[i] -= v[i][c] * sp[i] / steps;
    }
  };
  walk(walk, 0);
  return best;
}

}  // namespace cakecut::testing
