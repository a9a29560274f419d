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
using cakecut::testing::blue;
using cakecut::testing::truthful;

namespace {

Piece iv(const Rational& a, const Rational& b) { return Piece::interval(a, b); }
Rational r(long p, long q = 1) { return make_rational(p, q); }

}  // namespace

TEST_CASE("mechanism names round-trip") {
  for (MechanismId m : all_mechanisms()) CHECK(parse_mechanism(mechanism_name(m)) == m);
  CHECK_FALSE(parse_mechanism("divide-and-conquer"));
  CHECK_THROWS_AS(check_arity(MechanismId::CutAndChoose, 3), ArityError);
  CHECK_THROWS_AS(check_arity(MechanismId::SelfridgeConway, 2), ArityError);
  CHECK_THROWS_AS(check_arity(MechanismId::LeftmostLeaves, 1), ArityError);
  CHECK_NOTHROW(check_arity(MechanismId::NashOptimal, 1));
}

TEST_CASE("cut-and-choose") {
  Outcome a = run_cut_and_choose(Strategy{blue()}, Strategy{Valuation::uniform_on(r(0), r(2, 5))});
  CHECK(a.allocation.pieces[1] == iv(r(0), r(1, 2)));
  CHECK(a.allocation.pieces[0] == iv(r(1, 2), r(1)));
  CHECK(eval(blue(), a.allocation.pieces[0]) == r(1, 2));

  Outcome b = run_cut_and_choose(Strategy{type_cutting_at(r(2, 5), r(1, 2))},
                                 Strategy{Valuation::uniform_on(r(0), r(3, 10))});
  CHECK(b.allocation.pieces[0] == iv(r(2, 5), r(1)));
  CHECK(eval(blue(), b.allocation.pieces[0]) == r(3, 4));

  Outcome c = run_cut_and_choose(Strategy{Valuation::uniform()}, Strategy{Valuation::uniform()});
  CHECK(c.allocation.pieces[1] == iv(r(0), r(1, 2)));  // left on ties
  CHECK(eval(Valuation::uniform(), c.allocation.pieces[0]) == r(1, 2));
}

TEST_CASE("cut-middle") {
  Outcome a = run_cut_middle(Strategy{blue()}, Strategy{type_cutting_at(r(1, 100), r(1, 2))});
  CHECK(a.rounds.front().winning_cut == r(51, 200));
  CHECK(a.allocation.pieces[0] == iv(r(51, 200), r(1)));
  CHECK(eval(blue(), a.allocation.pieces[0]) == r(3, 4));

  Outcome b = run_cut_middle(Strategy{Valuation::uniform()}, Strategy{Valuation::uniform()});
  CHECK(b.allocation.pieces[0] == iv(r(0), r(1, 2)));

  // Reporting a cut at 0.02 against 0.01: Blue keeps [0.015, 1].
  Outcome c = run_cut_middle(Strategy{type_cutting_at(r(2, 100), r(1, 2))}, Strategy{type_cutting_at(r(1, 100), r(1, 2))});
  CHECK(c.allocation.pieces[0] == iv(r(15, 1000), r(1)));
  const Rational u = eval(blue(), c.allocation.pieces[0]);
  CHECK(u == 1 - r(5, 2) * r(15, 1000));
  CHECK(u == r(77, 80));
  CHECK(to_double(u) == doctest::Approx(1 - 2.5 * 0.015));
}

TEST_CASE("last diminisher") {
  const Valuation left_half = Valuation::uniform_on(r(0), r(1, 2));
  Outcome a = run_last_diminisher(truthful({Valuation::uniform(), left_half}));
  CHECK(a.allocation.pieces[1] == iv(r(0), r(1, 4)));
  CHECK(eval(left_half, a.allocation.pieces[1]) == r(1, 2));

  Outcome b = run_last_diminisher({Strategy{Valuation::uniform()}, Strategy{type_cutting_at(r(49, 100), r(1, 2))}});
  CHECK(b.allocation.pieces[1] == iv(r(0), r(49, 100)));
  CHECK(eval(left_half, b.allocation.pieces[1]) == r(49, 50));

  const Valuation u = Valuation::uniform();
  Outcome c = run_last_diminisher(truthful({u, u, u}));
  CHECK(c.allocation.pieces[0] == iv(r(0), r(1, 3)));
  CHECK(c.allocation.pieces[1] == iv(r(1, 3), r(2, 3)));
  CHECK(c.allocation.pieces[2] == iv(r(2, 3), r(1)));
}

TEST_CASE("leftmost leaves") {
  Outcome a = run_leftmost_leaves(truthful({blue(), Valuation::uniform()}));
  CHECK(a.rounds.front().winner == 0);
  CHECK(a.allocation.pieces[0] == iv(r(0), r(1, 2)));

  const Valuation u = Valuation::uniform();
  Outcome b = run_leftmost_leaves(truthful({u, u, u}));
  CHECK(b.rounds.at(0).winning_cut == r(1, 3));
  CHECK(b.rounds.at(0).winner == 0);
  CHECK(b.rounds.at(1).winning_cut == r(2, 3));
  CHECK(b.rounds.at(1).winner == 1);
  CHECK(b.allocation.pieces[2] == iv(r(2, 3), r(1)));

  Outcome c = run_leftmost_leaves(truthful({u, u, u, u, u}));
  CHECK(c.rounds.front().winning_cut == r(1, 5));
  CHECK(c.rounds.front().winner == 0);
}

TEST_CASE("modified leftmost leaves") {
  const Valuation u = Valuation::uniform();
  const Valuation first = type_cutting_at(r(1, 10), r(1, 5));
  const Valuation late = Valuation::uniform_on(r(19, 20), r(1));
  Outcome a = run_leftmost_leaves_modified(truthful({first, late, late, late, u}));
  CHECK(a.rounds.at(0).winning_cut == r(1, 10));
  CHECK(a.rounds.at(1).winner == 4);
  CHECK(a.rounds.at(1).winning_cut == r(3, 10));

  std::vector<Strategy> s = truthful({first, late, late, late, u});
  s[4] = Strategy{leftmost_share_fake(u, r(1, 10), 5, 4)};
  Outcome b = run_leftmost_leaves_modified(s);
  CHECK(b.rounds.at(1).winner == 4);
  CHECK(b.rounds.at(1).winning_cut == r(13, 40));
  CHECK(eval(u, b.allocation.pieces[4]) == r(9, 40));

  Outcome c = run_leftmost_leaves_modified(truthful({u, u}));
  CHECK(c.allocation == run_leftmost_leaves(truthful({u, u})).allocation);
}

TEST_CASE("Even-Paz variant") {
  const Valuation u = Valuation::uniform();
  Outcome a = run_leftmost_leaves_even_paz(truthful({u, u, u, u}));
  for (std::size_t i = 0; i < 4; ++i) CHECK(eval(u, a.allocation.pieces[i]) == r(1, 4));

  const Valuation tail = Valuation::uniform_on(r(9, 10), r(1));
  Outcome b = run_leftmost_leaves_even_paz(truthful({u, u, tail, tail}));
  CHECK(b.allocation.pieces[0].intervals().back().end <= r(1, 2));
  CHECK(b.allocation.pieces[1].intervals().back().end == r(1, 2));
  CHECK(b.allocation.pieces[2].intervals().front().start >= r(1, 2));
  CHECK(b.allocation.pieces[3].intervals().front().start >= r(1, 2));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Valuation> t{testing::random_valuation(rng), testing::random_valuation(rng)};
    CHECK(run_leftmost_leaves_even_paz(truthful(t)).allocation == run_leftmost_leaves(truthful(t)).allocation);
  }
}

TEST_CASE("Selfridge-Conway") {
  const Valuation u = Valuation::uniform();
  Outcome a = run_selfridge_conway(truthful({u, u, u}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(eval(u, a.allocation.pieces[i]) == r(1, 3));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    std::vector<Valuation> t;
    for (int i = 0; i < 3; ++i) t.push_back(testing::random_valuation(rng));
    Outcome o = run_selfridge_conway(truthful(t));
    CHECK(is_complete_partition(o.allocation));
    CHECK(check_envy_free(o.allocation, t));
  }
}

TEST_CASE("completeness and connectivity on random profiles") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    std::vector<Valuation> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(testing::random_valuation(rng));
    for (MechanismId m : all_mechanisms()) {
      if (m == MechanismId::CutAndChoose || m == MechanismId::CutMiddle) {
        if (n != 2) continue;
      } else if (m == MechanismId::SelfridgeConway && n != 3) {
        continue;
      }
      Outcome o = run(m, truthful(t));
      CHECK(is_complete_partition(o.allocation));
      if (is_connected_mechanism(m))
        for (const Piece& p : o.allocation.pieces) CHECK(is_connected(p));
    }
  }
}
