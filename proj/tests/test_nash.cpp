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

#include "support.hpp"

#include <doctest.h>

using namespace cakecut;

namespace {

Rational r(long p, long q = 1) { return make_rational(p, q); }

std::vector<std::vector<double>> to_doubles(const nash::CellProfile& cp) {
  std::vector<std::vector<double>> v(static_cast<std::size_t>(cp.agents()));
  for (Eigen::Index i = 0; i < cp.agents(); ++i)
    for (Eigen::Index c = 0; c < cp.cells(); ++c) v[static_cast<std::size_t>(i)].push_back(to_double(cp.values(i, c)));
  return v;
}

double product(const std::vector<Rational>& u) {
  double p = 1;
  for (const Rational& x : u) p *= to_double(x);
  return p;
}

}  // namespace

TEST_CASE("Nash optimum on small profiles") {
  const Valuation u = Valuation::uniform();
  auto a = nash::solve_nash({u, u});
  CHECK(a.utilities() == std::vector<Rational>{r(1, 2), r(1, 2)});

  auto b = nash::solve_nash({Valuation::uniform_on(r(0), r(1, 2)), Valuation::uniform_on(r(1, 2), r(1))});
  CHECK(b.utilities() == std::vector<Rational>{r(1), r(1)});

  auto c = nash::solve_nash({u, Valuation::uniform_on(r(0), r(1, 2))});
  CHECK(c.utilities() == std::vector<Rational>{r(1, 2), r(1)});
  // One-dimensional oracle: (1/2 + a/2)(1 - a) over a in [0, 1] peaks at a = 0.
  double best_a = -1, best = -1;
  for (int k = 0; k <= 1000; ++k) {
    const double x = k / 1000.0, p = (0.5 + 0.5 * x) * (1 - x);
    if (p > best) best = p, best_a = x;
  }
  CHECK(best_a == 0.0);
  CHECK(product(c.utilities()) == doctest::Approx(best));
}

TEST_CASE("materialize splits cells left to right in agent order") {
  nash::CellProfile cp = nash::make_cell_profile({Valuation::uniform(), Valuation::uniform(), Valuation::uniform()});
  cp.breaks = {r(0), r(2, 5), r(1)};
  cp.values = lp::Matrix<Rational>(3, 2);
  cp.fractions = lp::Matrix<Rational>(3, 2);
  for (Eigen::Index i = 0; i < 3; ++i) {
    cp.values(i, 0) = r(2, 5);
    cp.values(i, 1) = r(3, 5);
    cp.fractions(i, 1) = i == 0 ? r(1) : r(0);
  }
  cp.fractions(0, 0) = r(1, 2);
  cp.fractions(1, 0) = r(1, 4);
  cp.fractions(2, 0) = r(1, 4);
  Allocation a = nash::materialize(cp);
  CHECK(a.pieces[0].intervals().front() == Interval{r(0), r(1, 5)});
  CHECK(a.pieces[1] == Piece::interval(r(1, 5), r(3, 10)));
  CHECK(a.pieces[2] == Piece::interval(r(3, 10), r(2, 5)));
  CHECK(a.pieces[0].intervals().back() == Interval{r(2, 5), r(1)});

  nash::CellProfile one = nash::make_cell_profile({Valuation::uniform(), Valuation::uniform()});
  one.fractions(0, 0) = r(1, 2);
  one.fractions(1, 0) = r(1, 2);
  Allocation b = nash::materialize(one);
  CHECK(b.pieces[0] == Piece::interval(r(0), r(1, 2)));
  CHECK(b.pieces[1] == Piece::interval(r(1, 2), r(1)));
}

TEST_CASE("Nash optimum is fair, certified and beats brute force") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 15; ++k) {
    const std::size_t agents = 2 + static_cast<std::size_t>(k % 2);
    const int cells = agents == 2 ? 1 + k % 3 : 1 + k % 2;
    std::vector<Valuation> t = testing::random_profile_on_cells(rng, agents, cells);
    nash::CellProfile cp = nash::solve_nash(t);
    CHECK(nash::bang_per_buck_residual(cp, 1e-9) <= 1e-9);
    Allocation a = nash::materialize(cp);
    CHECK(utilities(a, t) == cp.utilities());
    for (std::size_t i = 0; i < agents; ++i)
      for (std::size_t j = 0; j < agents; ++j)
        CHECK(to_double(eval(t[i], a.pieces[i])) >= to_double(eval(t[i], a.pieces[j])) - 1e-9);
    CHECK(product(cp.utilities()) >= testing::brute_force_nash_product(to_doubles(cp), 50) - 1e-6);
  }
}

TEST_CASE("scaling one agent's profile leaves the optimum unchanged") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    std::vector<Valuation> t = testing::random_profile_on_cells(rng, 3, 4);
    nash::CellProfile base = nash::make_cell_profile(t);
    nash::CellProfile scaled = base;
    scaled.values.row(1) *= Rational(7, 3);
    nash::CellProfile a = nash::solve_nash(base), b = nash::solve_nash(scaled);
    for (Eigen::Index i = 0; i < a.agents(); ++i)
      for (Eigen::Index c = 0; c < a.cells(); ++c)
        CHECK(to_double(a.fractions(i, c)) == doctest::Approx(to_double(b.fractions(i, c))).epsilon(1e-6));
  }
}

TEST_CASE("Nash allocations pass the exact Pareto check") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    std::vector<Valuation> t = testing::random_profile_on_cells(rng, 3, 4);
    Outcome o = run_nash_optimal(t);
    CHECK(check_pareto(o.allocation, t, Rational(1, 1000000000)));
    CHECK(check_envy_free(o.allocation, t));
  }
}
