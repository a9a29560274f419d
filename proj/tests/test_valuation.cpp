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

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("0.325") == Rational(13, 40));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK(parse_rational(" 6/8 ") == Rational(3, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(to_string(Rational(6, 8)) == "3/4");
  CHECK(to_string(Rational(2)) == "2");
}

TEST_CASE("valuation rejects broken invariants") {
  CHECK_THROWS_AS(Valuation({}), InvalidValuation);
  CHECK_THROWS_AS(Valuation({{Rational(0), Rational(1, 2), Rational(2)}, {Rational(1, 2), Rational(1), Rational(2)}}),
                  InvalidValuation);
  CHECK_THROWS_AS(Valuation({{Rational(0), Rational(1, 2), Rational(1)}, {Rational(3, 5), Rational(1), Rational(1)}}),
                  InvalidValuation);
  CHECK_THROWS_AS(Valuation({{Rational(0), Rational(1), Rational(-1)}}), InvalidValuation);
  CHECK_THROWS_AS(Valuation({{Rational(1, 2), Rational(1, 2), Rational(1)}, {Rational(1, 2), Rational(1), Rational(2)}}),
                  InvalidValuation);
  try {
    Valuation({{Rational(0), Rational(1), Rational(2)}});
    FAIL("accepted a total of 2");
  } catch (const InvalidValuation& e) {
    CHECK(std::string(e.what()).find("normalization") != std::string::npos);
  }
}

TEST_CASE("eval on the three-block type") {
  const Valuation b = blue();
  CHECK(eval(b, Piece::interval(Rational(2, 5), Rational(1))) == Rational(3, 4));
  CHECK(eval(b, Rational(0), Rational(1)) == 1);
  CHECK(eval(b, Rational(0), Rational(3, 5)) == Rational(3, 4));
  CHECK(testing::quadrature_oracle(b, 0, 0.6) == doctest::Approx(0.75).epsilon(1e-4));
  CHECK(eval(b, Rational(1, 2), Rational(1, 2)) == 0);
}

TEST_CASE("cut examples") {
  CHECK(cut(blue(), Rational(0), Rational(1, 2)) == Rational(1, 2));
  CHECK(cut(blue(), Rational(3, 10), Rational(0)) == Rational(3, 10));
  CHECK(cut(Valuation::uniform(), Rational(1, 10), Rational(1, 5)) == Rational(3, 10));
  // Zero plateau: the minimum point is the start of the plateau.
  CHECK(cut(blue(), Rational(0), Rational(1, 4)) == Rational(1, 10));
  CHECK_THROWS_AS(cut(blue(), Rational(3, 5), Rational(1, 2)), Unsatisfiable);
}

TEST_CASE("restrict_and_rescale") {
  Restricted u = restrict_and_rescale(Valuation::uniform(), Rational(1, 2));
  CHECK(u.scale == Rational(1, 2));
  CHECK(u.valuation.domain_start() == Rational(1, 2));
  CHECK(u.valuation.segments().front().density == 2);
  Restricted b = restrict_and_rescale(blue(), Rational(3, 5));
  CHECK(b.scale == eval(blue(), Rational(3, 5), Rational(1)));
  CHECK(b.scale == Rational(1, 4));
  CHECK(eval(b.valuation, Rational(9, 10), Rational(1)) == 1);
  CHECK(restrict_and_rescale(blue(), Rational(0)).valuation == blue());
  CHECK(restrict_and_rescale(blue(), Rational(0)).scale == 1);
  CHECK_THROWS_AS(restrict_and_rescale(Valuation::uniform_on(Rational(0), Rational(1, 2)), Rational(1, 2)),
                  ZeroRemainder);
}

TEST_CASE("divisibility_point") {
  CHECK(divisibility_point(Valuation::uniform(), Rational(0), Rational(1), Rational(1, 2)) == Rational(1, 2));
  CHECK(divisibility_point(blue(), Rational(0), Rational(1), Rational(1, 4)) == Rational(1, 10));
  CHECK(eval(blue(), Rational(0), Rational(1, 10)) == Rational(1, 4));
  CHECK(divisibility_point(blue(), Rational(1, 5), Rational(4, 5), Rational(0)) == Rational(1, 5));
}

TEST_CASE("type_cutting_at places the requested cut") {
  Valuation v = type_cutting_at(Rational(2, 5), Rational(1, 2));
  CHECK(cut(v, Rational(0), Rational(1, 2)) == Rational(2, 5));
  CHECK(eval(v, Rational(0), Rational(1)) == 1);
}

TEST_CASE("pieces and partitions") {
  Piece p;
  p.append(Rational(0), Rational(1, 4));
  p.append(Rational(1, 4), Rational(1, 2));
  CHECK(p.intervals().size() == 1);
  CHECK(is_connected(p));
  CHECK_THROWS(Piece({{Rational(0), Rational(1, 2)}, {Rational(1, 4), Rational(1)}}));
  Allocation a{{Piece::interval(Rational(0), Rational(1, 3)), Piece::interval(Rational(1, 3), Rational(1))}};
  CHECK(is_complete_partition(a));
  Allocation gap{{Piece::interval(Rational(0), Rational(1, 3)), Piece::interval(Rational(1, 2), Rational(1))}};
  CHECK_FALSE(is_complete_partition(gap));
}

TEST_CASE("eval and cut agree with closed-form oracles on random types") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Valuation v = testing::random_valuation(rng);
    Rational a = testing::random_point(rng, 97), b = testing::random_point(rng, 97);
    if (b < a) std::swap(a, b);
    CHECK(to_double(eval(v, a, b)) ==
          doctest::Approx(testing::cdf_oracle(v, to_double(b)) - testing::cdf_oracle(v, to_double(a))).epsilon(1e-12));
    Rational alpha = eval(v, a, Rational(1)) / 3;
    Rational y = cut(v, a, alpha);
    CHECK(testing::cdf_oracle(v, to_double(y)) - testing::cdf_oracle(v, to_double(a)) ==
          doctest::Approx(to_double(alpha)).epsilon(1e-12));
  }
}
