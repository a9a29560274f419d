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

#include "cakecut/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace cakecut::families {

void check_grid_step(const Rational& h) {
  if (!(h > 0) || h > 1) throw std::invalid_argument("grid step must lie in (0, 1]");
  Rational cells = 1 / h;
  if (boost::multiprecision::denominator(cells) != 1)
    throw std::invalid_argument("grid step " + to_string(h) + " does not divide 1");
}

long grid_cells(const Rational& h) {
  check_grid_step(h);
  return boost::multiprecision::numerator(Rational(1 / h)).convert_to<long>();
}

std::vector<Valuation> cell_family(const Rational& h) {
  const long cells = grid_cells(h);
  std::vector<Valuation> out{Valuation::uniform()};
  for (long k = 0; k < cells; ++k) {
    Valuation v = Valuation::uniform_on(h * k, h * (k + 1));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Valuation> bump_family(const Rational& h, std::span<const Rational> menu) {
  const long cells = grid_cells(h);
  std::vector<Rational> breaks;
  for (long k = 0; k <= cells; ++k) breaks.push_back(h * k);
  std::vector<Valuation> out{Valuation::uniform()};
  for (const Rational& base : menu)
    for (const Rational& bump : menu) {
      if (base == bump || base < 0 || bump < 0) continue;
      for (long k = 0; k < cells; ++k) {
        std::vector<Rational> dens(static_cast<std::size_t>(cells), base);
        dens[static_cast<std::size_t>(k)] = bump;
        Valuation v = Valuation::from_densities(breaks, dens);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
      }
    }
  return out;
}

Valuation random_grid_type(std::mt19937_64& rng, const Rational& h, std::span<const Rational> menu) {
  const long cells = grid_cells(h);
  if (std::none_of(menu.begin(), menu.end(), [](const Rational& d) { return d > 0; }))
    throw std::invalid_argument("density menu has no positive entry");
  std::vector<Rational> breaks;
  for (long k = 0; k <= cells; ++k) breaks.push_back(h * k);
  std::uniform_int_distribution<std::size_t> pick(0, menu.size() - 1);
  for (;;) {
    std::vector<Rational> dens;
    bool positive = false;
    for (long k = 0; k < cells; ++k) {
      dens.push_back(menu[pick(rng)]);
      positive = positive || dens.back() > 0;
    }
    if (positive) return Valuation::from_densities(breaks, dens);
  }
}

std::vector<Rational> default_menu() { return {Rational(0), Rational(1), Rational(2), Rational(4)}; }

}  // namespace cakecut::families
