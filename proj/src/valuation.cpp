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

#include "cakecut/valuation.hpp"

#include <algorithm>

namespace cakecut {

Valuation::Valuation(std::vector<Segment> segments) {
  if (segments.empty()) throw InvalidValuation("valuation has no segments");
  if (segments.front().start < 0) throw InvalidValuation("valuation starts before 0");
  if (segments.back().end != 1) throw InvalidValuation("valuation must end at 1");
  Rational total(0);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& s = segments[k];
    if (!(s.start < s.end)) throw InvalidValuation("segment with start >= end");
    if (s.density < 0) throw InvalidValuation("negative density");
    if (k > 0 && segments[k - 1].end != s.start) throw InvalidValuation("segments are not contiguous");
    total += s.density * (s.end - s.start);
  }
  if (total != 1) throw InvalidValuation("normalization: total measure is " + to_string(total) + ", expected 1");
  // merge equal neighbours so that equal measures compare equal
  for (auto& s : segments) {
    if (!segments_.empty() && segments_.back().density == s.density)
      segments_.back().end = s.end;
    else
      segments_.push_back(std::move(s));
  }
}

Valuation Valuation::uniform() { return Valuation({Segment{Rational(0), Rational(1), Rational(1)}}); }

Valuation Valuation::uniform_on(const Rational& a, const Rational& b) {
  if (!(0 <= a && a < b && b <= 1)) throw InvalidValuation("uniform_on needs 0 <= a < b <= 1");
  Rational d = 1 / (b - a);
  std::vector<Segment> segs;
  if (a > 0) segs.push_back({Rational(0), a, Rational(0)});
  segs.push_back({a, b, d});
  if (b < 1) segs.push_back({b, Rational(1), Rational(0)});
  return Valuation(std::move(segs));
}

Valuation Valuation::from_densities(std::span<const Rational> breaks, std::span<const Rational> densities) {
  if (breaks.size() != densities.size() + 1) throw InvalidValuation("need one more breakpoint than densities");
  Rational total(0);
  for (std::size_t k = 0; k < densities.size(); ++k) total += densities[k] * (breaks[k + 1] - breaks[k]);
  if (total <= 0) throw InvalidValuation("zero measure");
  std::vector<Segment> segs;
  segs.reserve(densities.size());
  for (std::size_t k = 0; k < densities.size(); ++k) segs.push_back({breaks[k], breaks[k + 1], densities[k] / total});
  return Valuation(std::move(segs));
}

Rational Valuation::max_density() const {
  Rational m(0);
  for (const auto& s : segments_) m = max(m, s.density);
  return m;
}

Piece::Piece(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (intervals_[k].end < intervals_[k].start) throw std::invalid_argument("interval with end < start");
    if (k > 0 && intervals_[k].start < intervals_[k - 1].end) throw std::invalid_argument("piece intervals overlap or are unsorted");
  }
}

bool Piece::empty() const {
  return std::all_of(intervals_.begin(), intervals_.end(), [](const Interval& i) { return i.start == i.end; });
}

Rational Piece::length() const {
  Rational len(0);
  for (const auto& i : intervals_) len += i.length();
  return len;
}

void Piece::append(const Rational& a, const Rational& b) {
  if (b < a) throw std::invalid_argument("interval with end < start");
  if (!intervals_.empty() && a < intervals_.back().end) throw std::invalid_argument("append would overlap");
  if (!intervals_.empty() && intervals_.back().end == a)
    intervals_.back().end = b;
  else
    intervals_.push_back({a, b});
}

bool is_connected(const Piece& piece) {
  int nonempty = 0;
  for (const auto& i : piece.intervals())
    if (i.start < i.end) ++nonempty;
  return nonempty <= 1;
}

bool is_complete_partition(const Allocation& alloc) {
  std::vector<Interval> all;
  for (const auto& p : alloc.pieces)
    for (const auto& i : p.intervals())
      if (i.start < i.end) all.push_back(i);
  std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
  Rational at(0);
  for (const auto& i : all) {
    if (i.start != at) return false;
    at = i.end;
  }
  return at == 1;
}

Rational eval(const Valuation& v, const Rational& a, const Rational& b) {
  Rational value(0);
  if (!(a < b)) return value;
  for (const auto& s : v.segments()) {
    if (s.end <= a) continue;
    if (s.start >= b) break;
    if (s.density == 0) continue;
    value += s.density * (min(s.end, b) - max(s.start, a));
  }
  return value;
}

Rational eval(const Valuation& v, const Piece& p) {
  Rational value(0);
  for (const auto& i : p.intervals()) value += eval(v, i.start, i.end);
  return value;
}

Rational cut(const Valuation& v, const Rational& x, const Rational& alpha) {
  if (alpha < 0) throw std::invalid_argument("cut with negative alpha");
  if (alpha == 0) return x;
  Rational need = alpha;
  for (const auto& s : v.segments()) {
    if (s.end <= x || s.density == 0) continue;
    Rational from = max(s.start, x);
    Rational avail = s.density * (s.end - from);
    if (avail >= need) return from + need / s.density;
    need -= avail;
  }
  throw Unsatisfiable("cut(" + to_string(x) + ", " + to_string(alpha) + ") exceeds remaining value " +
                      to_string(alpha - need));
}

Restricted restrict_and_rescale(const Valuation& v, const Rational& x) {
  Rational scale = eval(v, x, Rational(1));
  if (scale == 0) throw ZeroRemainder("no value to the right of " + to_string(x));
  if (x <= v.domain_start()) return {v, scale};
  std::vector<Segment> segs;
  for (const auto& s : v.segments()) {
    if (s.end <= x) continue;
    segs.push_back({max(s.start, x), s.end, s.density / scale});
  }
  return {Valuation(std::move(segs)), scale};
}

Rational divisibility_point(const Valuation& v, const Rational& x, const Rational& y, const Rational& lambda) {
  if (y < x || lambda < 0 || lambda > 1) throw std::invalid_argument("divisibility_point needs x <= y and 0 <= lambda <= 1");
  return cut(v, x, lambda * eval(v, x, y));
}

Valuation type_cutting_at(const Rational& x, const Rational& alpha) {
  if (!(0 < x && x <= 1) || !(0 < alpha && alpha <= 1)) throw InvalidValuation("type_cutting_at needs 0 < x <= 1, 0 < alpha <= 1");
  if (x == 1) {
    if (alpha != 1) throw InvalidValuation("type_cutting_at(1, alpha) needs alpha == 1");
    return Valuation::uniform();
  }
  const Rational breaks[] = {Rational(0), x, Rational(1)};
  const Rational dens[] = {alpha / x, (1 - alpha) / (1 - x)};
  return Valuation::from_densities(breaks, dens);
}

}  // namespace cakecut
