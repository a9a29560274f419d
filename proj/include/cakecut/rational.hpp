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

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cakecut {

/// Exact rational scalar used throughout the core.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or an exact decimal such as "0.325" or "-1.5e-2".
Rational parse_rational(std::string_view text);

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

double to_double(const Rational& r);

inline Rational make_rational(long num, long den = 1) { return Rational(num) / Rational(den); }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace cakecut
