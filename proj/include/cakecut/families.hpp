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

#include "cakecut/valuation.hpp"

#include <random>
#include <span>
#include <vector>

namespace cakecut::families {

/// Checks that h > 0 and 1/h is an integer.
void check_grid_step(const Rational& h);
long grid_cells(const Rational& h);

/// Opponent family F_h: the uniform type plus, for each grid cell, the type
/// holding all of its value uniformly inside that cell.
std::vector<Valuation> cell_family(const Rational& h);

/// Single-bump types: density `base` everywhere except one grid cell with
/// density `bump`, for base != bump drawn from the menu, normalized and
/// deduplicated, plus the uniform type.
std::vector<Valuation> bump_family(const Rational& h, std::span<const Rational> menu);

/// A type whose density on every grid cell is drawn from the menu (not all zero).
Valuation random_grid_type(std::mt19937_64& rng, const Rational& h, std::span<const Rational> menu);

std::vector<Rational> default_menu();

}  // namespace cakecut::families
