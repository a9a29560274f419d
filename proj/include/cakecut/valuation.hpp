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

#include "cakecut/rational.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace cakecut {

/// Raised when a cut query asks for more value than remains to the right of x.
struct Unsatisfiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroRemainder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidValuation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Segment {
  Rational start;
  Rational end;
  Rational density;

  bool operator==(const Segment&) const = default;
};

/// A piecewise-constant, non-atomic value measure with total mass exactly 1.
///
/// The segments are contiguous and end at 1. An ordinary type starts at 0; a
/// valuation produced by restrict_and_rescale starts at the restriction point.
class Valuation {
 public:
  explicit Valuation(std::vector<Segment> segments);

  static Valuation uniform();
  /// Uniform on [a, b] and zero elsewhere on [0, 1].
  static Valuation uniform_on(const Rational& a, const Rational& b);
  /// Builds a type from unnormalized densities on consecutive [breaks[k], breaks[k+1]].
  static Valuation from_densities(std::span<const Rational> breaks, std::span<const Rational> densities);

  const std::vector<Segment>& segments() const { return segments_; }
  const Rational& domain_start() const { return segments_.front().start; }
  Rational max_density() const;

  bool operator==(const Valuation&) const = default;

 private:
  std::vector<Segment> segments_;
};

struct Interval {
  Rational start;
  Rational end;

  Rational length() const { return end - start; }
  bool operator==(const Interval&) const = default;
};

/// A finite union of subintervals of [0, 1]; intervals are sorted and may share endpoints.
class Piece {
 public:
  Piece() = default;
  explicit Piece(std::vector<Interval> intervals);
  static Piece interval(const Rational& a, const Rational& b) { return Piece({Interval{a, b}}); }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const;
  Rational length() const;
  /// Appends [a, b]; a must not precede the current right end.
  void append(const Rational& a, const Rational& b);

  bool operator==(const Piece&) const = default;

 private:
  std::vector<Interval> intervals_;
};

/// One piece per agent, in agent order.
struct Allocation {
  std::vector<Piece> pieces;

  std::size_t size() const { return pieces.size(); }
  const Piece& operator[](std::size_t i) const { return pieces[i]; }
  bool operator==(const Allocation&) const = default;
};

/// True iff the pieces are disjoint up to endpoints and jointly cover [0, 1].
bool is_complete_partition(const Allocation& alloc);
bool is_connected(const Piece& piece);

Rational eval(const Valuation& v, const Rational& a, const Rational& b);
Rational eval(const Valuation& v, const Piece& p);

/// Minimum y with eval(v, [x, y]) == alpha. Throws Unsatisfiable when alpha > eval(v, [x, 1]).
Rational cut(const Valuation& v, const Rational& x, const Rational& alpha);

struct Restricted {
  Valuation valuation;
  Rational scale;
};

/// Conditional valuation on [x, 1], rescaled to total 1; scale is eval(v, [x, 1]).
Restricted restrict_and_rescale(const Valuation& v, const Rational& x);

/// Minimal z in [x, y] with eval(v, [x, z]) == lambda * eval(v, [x, y]).
Rational divisibility_point(const Valuation& v, const Rational& x, const Rational& y, const Rational& lambda);

/// A type spending `alpha` uniformly on [0, x] and the rest uniformly on [x, 1],
/// so that cut(0, alpha) lands exactly on x.
Valuation type_cutting_at(const Rational& x, const Rational& alpha);

}  // namespace cakecut
