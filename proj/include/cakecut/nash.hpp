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

#include "cakecut/lp.hpp"
#include "cakecut/valuation.hpp"

#include <stdexcept>
#include <vector>

namespace cakecut::nash {

/// Agents' values on the common refinement of their breakpoints, together
/// with a fractional assignment of every cell.
struct CellProfile {
  std::vector<Rational> breaks;   // cell c is [breaks[c], breaks[c+1]]
  lp::Matrix<Rational> values;    // agents x cells
  lp::Matrix<Rational> fractions; // agents x cells; columns sum to 1
  bool exact = false;             // optimality certified in exact arithmetic
  double residual = 0;            // bang-per-buck violation of the certificate
  long iterations = 0;

  Eigen::Index agents() const { return values.rows(); }
  Eigen::Index cells() const { return values.cols(); }
  std::vector<Rational> utilities() const;
};

struct NonConvergence : std::runtime_error {
  NonConvergence(const std::string& what, double residual) : std::runtime_error(what), residual(residual) {}
  double residual;
};

struct DegenerateProfile : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  double tol = 1e-9;
  long max_iterations = 1'000'000;
  double damping = 0.5;  // weight of the fresh proportional-response bids
  long snap_every = 25;  // attempt an exact certificate this often
};

/// Refinement of all breakpoints with per-agent cell values; fractions start at zero.
CellProfile make_cell_profile(const std::vector<Valuation>& profile);

/// Maximizes the sum of log utilities (the Nash product) over fractional cell assignments.
CellProfile solve_nash(const std::vector<Valuation>& profile, const Options& options = {});
/// Same, on an already built profile whose values need not be normalized.
CellProfile solve_nash(CellProfile profile, const Options& options = {});

/// Largest bang-per-buck violation: over (i, c) with f_ic > tol,
/// max_j v_jc / u_j - v_ic / u_i. Non-positive at an optimum.
double bang_per_buck_residual(const CellProfile& cp, double tol);

/// Splits each cell left to right in agent order, proportionally to the fractions.
Allocation materialize(const CellProfile& cp);

}  // namespace cakecut::nash
