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

#include "cakecut/mechanisms.hpp"

#include "cakecut/nash.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

namespace cakecut {

namespace {

constexpr std::array kMechanisms = {
    std::pair{MechanismId::CutAndChoose, std::string_view("cut-and-choose")},
    std::pair{MechanismId::CutMiddle, std::string_view("cut-middle")},
    std::pair{MechanismId::LastDiminisher, std::string_view("last-diminisher")},
    std::pair{MechanismId::MovingKnife, std::string_view("moving-knife")},
    std::pair{MechanismId::LeftmostLeaves, std::string_view("leftmost-leaves")},
    std::pair{MechanismId::LeftmostLeavesEvenPaz, std::string_view("leftmost-leaves-even-paz")},
    std::pair{MechanismId::LeftmostLeavesModified, std::string_view("leftmost-leaves-modified")},
    std::pair{MechanismId::SelfridgeConway, std::string_view("selfridge-conway")},
    std::pair{MechanismId::NashOptimal, std::string_view("nash-optimal")},
};

constexpr std::array kIds = {
    MechanismId::CutAndChoose,          MechanismId::CutMiddle,       MechanismId::LastDiminisher,
    MechanismId::MovingKnife,           MechanismId::LeftmostLeaves,  MechanismId::LeftmostLeavesEvenPaz,
    MechanismId::LeftmostLeavesModified, MechanismId::SelfridgeConway, MechanismId::NashOptimal,
};

Allocation empty_allocation(std::size_t n) {
  Allocation a;
  a.pieces.resize(n);
  return a;
}

enum class ShareRule { RemainingShare, WholeCakeShare };

// Simultaneous-cut rounds; the smallest cut (lowest index on ties) leaves with
// the piece to its left.
Outcome run_rounds(const std::vector<Strategy>& s, ShareRule rule) {
  const std::size_t n = s.size();
  check_arity(MechanismId::LeftmostLeaves, n);
  Outcome out;
  out.allocation = empty_allocation(n);
  std::vector<AgentId> remaining(n);
  std::iota(remaining.begin(), remaining.end(), AgentId{0});
  Rational left(0);
  const Rational whole_share = Rational(1) / Rational(static_cast<long>(n));
  for (int period = 1; remaining.size() > 1; ++period) {
    const Rational k(static_cast<long>(remaining.size()));
    RoundRecord round;
    round.period = period;
    for (AgentId i : remaining) {
      Rational point;
      if (period == 1) {
        point = ask(s, out.trace, CutQuery{i, left, whole_share});
      } else {
        Rational rest = ask(s, out.trace, EvalQuery{i, left, Rational(1)});
        if (rule == ShareRule::RemainingShare) {
          point = ask(s, out.trace, CutQuery{i, left, rest / k});
        } else if (rest >= whole_share) {
          point = ask(s, out.trace, CutQuery{i, left, whole_share});
        } else {
          point = Rational(1);  // cannot meet the target; never undercuts anyone
        }
      }
      round.cuts.emplace_back(i, point);
    }
    auto best = round.cuts.begin();
    for (auto it = round.cuts.begin(); it != round.cuts.end(); ++it)
      if (it->second < best->second) best = it;
    round.winner = best->first;
    round.winning_cut = best->second;
    out.allocation.pieces[round.winner] = Piece::interval(left, round.winning_cut);
    left = round.winning_cut;
    std::erase(remaining, round.winner);
    out.rounds.push_back(std::move(round));
  }
  out.allocation.pieces[remaining.front()] = Piece::interval(left, Rational(1));
  return out;
}

void even_paz(const std::vector<Strategy>& s, std::vector<AgentId> agents, const Rational& y, const Rational& z,
              Outcome& out) {
  if (agents.size() == 1) {
    out.allocation.pieces[agents.front()] = Piece::interval(y, z);
    return;
  }
  const std::size_t k = agents.size();
  const std::size_t lower = k / 2;
  const Rational ratio = Rational(static_cast<long>(lower)) / Rational(static_cast<long>(k));
  RoundRecord round;
  round.period = static_cast<int>(out.rounds.size()) + 1;
  for (AgentId i : agents) {
    Rational value = ask(s, out.trace, EvalQuery{i, y, z});
    round.cuts.emplace_back(i, ask(s, out.trace, CutQuery{i, y, value * ratio}));
  }
  auto order = round.cuts;
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  round.winner = order[lower - 1].first;
  round.winning_cut = order[lower - 1].second;
  std::vector<AgentId> left_group, right_group;
  for (std::size_t r = 0; r < k; ++r) (r < lower ? left_group : right_group).push_back(order[r].first);
  std::sort(left_group.begin(), left_group.end());
  std::sort(right_group.begin(), right_group.end());
  const Rational split = round.winning_cut;
  out.rounds.push_back(std::move(round));
  even_paz(s, std::move(left_group), y, split, out);
  even_paz(s, std::move(right_group), split, z, out);
}

// Index of the first maximum.
std::size_t argmax(const std::vector<Rational>& values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

std::string_view mechanism_name(MechanismId m) {
  for (auto [id, name] : kMechanisms)
    if (id == m) return name;
  return "unknown";
}

std::optional<MechanismId> parse_mechanism(std::string_view name) {
  for (auto [id, n] : kMechanisms)
    if (n == name) return id;
  return std::nullopt;
}

std::span<const MechanismId> all_mechanisms() { return kIds; }

void check_arity(MechanismId m, std::size_t n) {
  const bool ok = [&] {
    switch (m) {
      case MechanismId::CutAndChoose:
      case MechanismId::CutMiddle:
        return n == 2;
      case MechanismId::SelfridgeConway:
        return n == 3;
      case MechanismId::NashOptimal:
        return n >= 1;
      default:
        return n >= 2;
    }
  }();
  if (!ok)
    throw ArityError(std::string(mechanism_name(m)) + " cannot run with " + std::to_string(n) + " agents");
}

bool is_connected_mechanism(MechanismId m) {
  return m != MechanismId::SelfridgeConway && m != MechanismId::NashOptimal;
}

Outcome run_cut_and_choose(const Strategy& cutter, const Strategy& chooser) {
  const std::vector<Strategy> s{cutter, chooser};
  Outcome out;
  out.allocation = empty_allocation(2);
  Rational x = ask(s, out.trace, CutQuery{0, Rational(0), Rational(1, 2)});
  Rational left_value = ask(s, out.trace, EvalQuery{1, Rational(0), x});
  const bool chooser_left = left_value >= Rational(1, 2);
  out.allocation.pieces[chooser_left ? 1 : 0] = Piece::interval(Rational(0), x);
  out.allocation.pieces[chooser_left ? 0 : 1] = Piece::interval(x, Rational(1));
  return out;
}

Outcome run_cut_middle(const Strategy& first, const Strategy& second) {
  const std::vector<Strategy> s{first, second};
  Outcome out;
  out.allocation = empty_allocation(2);
  Rational x1 = ask(s, out.trace, CutQuery{0, Rational(0), Rational(1, 2)});
  Rational x2 = ask(s, out.trace, CutQuery{1, Rational(0), Rational(1, 2)});
  Rational mid = (x1 + x2) / 2;
  const AgentId left_owner = x1 <= x2 ? 0 : 1;
  out.allocation.pieces[left_owner] = Piece::interval(Rational(0), mid);
  out.allocation.pieces[1 - left_owner] = Piece::interval(mid, Rational(1));
  RoundRecord round{1, {{0, x1}, {1, x2}}, left_owner, mid};
  out.rounds.push_back(std::move(round));
  return out;
}

Outcome run_last_diminisher(const std::vector<Strategy>& s) {
  const std::size_t n = s.size();
  check_arity(MechanismId::LastDiminisher, n);
  Outcome out;
  out.allocation = empty_allocation(n);
  std::vector<AgentId> remaining(n);
  std::iota(remaining.begin(), remaining.end(), AgentId{0});
  Rational left(0);
  for (int period = 1; remaining.size() > 1; ++period) {
    const Rational k(static_cast<long>(remaining.size()));
    RoundRecord round;
    round.period = period;
    std::optional<std::pair<AgentId, Rational>> holder;
    for (AgentId i : remaining) {
      Rational target = period == 1 ? Rational(1) / k
                                    : ask(s, out.trace, EvalQuery{i, left, Rational(1)}) / k;
      Rational point = ask(s, out.trace, CutQuery{i, left, target});
      round.cuts.emplace_back(i, point);
      if (!holder || point < holder->second) holder = {i, point};  // strict diminishing only
    }
    round.winner = holder->first;
    round.winning_cut = holder->second;
    out.allocation.pieces[round.winner] = Piece::interval(left, round.winning_cut);
    left = round.winning_cut;
    std::erase(remaining, round.winner);
    out.rounds.push_back(std::move(round));
  }
  out.allocation.pieces[remaining.front()] = Piece::interval(left, Rational(1));
  return out;
}

Outcome run_leftmost_leaves(const std::vector<Strategy>& s) { return run_rounds(s, ShareRule::RemainingShare); }

Outcome run_moving_knife(const std::vector<Strategy>& s) {
  check_arity(MechanismId::MovingKnife, s.size());
  // stop points of a continuously moving knife coincide with the period cut answers
  return run_rounds(s, ShareRule::RemainingShare);
}

Outcome run_leftmost_leaves_modified(const std::vector<Strategy>& s) {
  return run_rounds(s, ShareRule::WholeCakeShare);
}

Outcome run_leftmost_leaves_even_paz(const std::vector<Strategy>& s) {
  check_arity(MechanismId::LeftmostLeavesEvenPaz, s.size());
  Outcome out;
  out.allocation = empty_allocation(s.size());
  std::vector<AgentId> agents(s.size());
  std::iota(agents.begin(), agents.end(), AgentId{0});
  even_paz(s, std::move(agents), Rational(0), Rational(1), out);
  return out;
}

Outcome run_selfridge_conway(const std::vector<Strategy>& s) {
  check_arity(MechanismId::SelfridgeConway, s.size());
  Outcome out;
  out.allocation = empty_allocation(3);
  QueryTrace& tr = out.trace;
  const Rational third(1, 3);
  Rational c1 = ask(s, tr, CutQuery{0, Rational(0), third});
  Rational c2 = ask(s, tr, CutQuery{0, c1, third});
  std::array<Interval, 3> pieces{Interval{Rational(0), c1}, Interval{c1, c2}, Interval{c2, Rational(1)}};

  std::vector<Rational> v1;
  for (const auto& p : pieces) v1.push_back(ask(s, tr, EvalQuery{1, p.start, p.end}));
  const std::size_t best = argmax(v1);
  Rational second(-1);
  for (std::size_t k = 0; k < 3; ++k)
    if (k != best) second = max(second, v1[k]);
  std::optional<std::size_t> trimmed;
  Interval trimming;
  if (v1[best] > second) {
    Rational t = ask(s, tr, CutQuery{1, pieces[best].start, second});
    trimming = Interval{t, pieces[best].end};
    pieces[best].end = t;
    trimmed = best;
    v1[best] = second;
  }

  std::vector<Rational> v2;
  for (const auto& p : pieces) v2.push_back(ask(s, tr, EvalQuery{2, p.start, p.end}));
  const std::size_t pick2 = argmax(v2);
  std::size_t pick1;
  if (trimmed && *trimmed != pick2) {
    pick1 = *trimmed;
  } else {
    std::vector<Rational> rest = v1;
    rest[pick2] = Rational(-1);
    pick1 = argmax(rest);
  }
  const std::size_t pick0 = 3 - pick2 - pick1;
  out.allocation.pieces[2].append(pieces[pick2].start, pieces[pick2].end);
  out.allocation.pieces[1].append(pieces[pick1].start, pieces[pick1].end);
  out.allocation.pieces[0].append(pieces[pick0].start, pieces[pick0].end);
  if (!trimmed) return out;

  // the agent holding the trimmed piece chooses first from the trimmings, the other one divides
  const AgentId holder = pick2 == *trimmed ? 2 : 1;
  const AgentId divider = holder == 2 ? 1 : 2;
  Rational value = ask(s, tr, EvalQuery{divider, trimming.start, trimming.end});
  Rational d1 = ask(s, tr, CutQuery{divider, trimming.start, value / 3});
  Rational d2 = ask(s, tr, CutQuery{divider, d1, value / 3});
  std::array<Interval, 3> parts{Interval{trimming.start, d1}, Interval{d1, d2}, Interval{d2, trimming.end}};
  std::array<bool, 3> taken{};
  auto choose = [&](AgentId who) {
    std::vector<Rational> values(3, Rational(-1));
    for (std::size_t k = 0; k < 3; ++k)
      if (!taken[k]) values[k] = ask(s, tr, EvalQuery{who, parts[k].start, parts[k].end});
    const std::size_t k = argmax(values);
    taken[k] = true;
    return k;
  };
  std::array<std::optional<std::size_t>, 3> share;
  share[holder] = choose(holder);
  share[0] = choose(0);
  for (std::size_t k = 0; k < 3; ++k)
    if (!taken[k]) share[divider] = k;

  // rebuild pieces in left-to-right order
  for (AgentId a = 0; a < 3; ++a) {
    std::vector<Interval> bits(out.allocation.pieces[a].intervals());
    bits.push_back(parts[*share[a]]);
    std::sort(bits.begin(), bits.end(), [](const Interval& x, const Interval& y) { return x.start < y.start; });
    Piece p;
    for (const auto& b : bits) p.append(b.start, b.end);
    out.allocation.pieces[a] = std::move(p);
  }
  return out;
}

Outcome run_nash_optimal(const std::vector<Valuation>& reported) {
  check_arity(MechanismId::NashOptimal, reported.size());
  Outcome out;
  out.allocation = nash::materialize(nash::solve_nash(reported));
  return out;
}

Outcome run(MechanismId m, const std::vector<Strategy>& s) {
  check_arity(m, s.size());
  switch (m) {
    case MechanismId::CutAndChoose:
      return run_cut_and_choose(s[0], s[1]);
    case MechanismId::CutMiddle:
      return run_cut_middle(s[0], s[1]);
    case MechanismId::LastDiminisher:
      return run_last_diminisher(s);
    case MechanismId::MovingKnife:
      return run_moving_knife(s);
    case MechanismId::LeftmostLeaves:
      return run_leftmost_leaves(s);
    case MechanismId::LeftmostLeavesEvenPaz:
      return run_leftmost_leaves_even_paz(s);
    case MechanismId::LeftmostLeavesModified:
      return run_leftmost_leaves_modified(s);
    case MechanismId::SelfridgeConway:
      return run_selfridge_conway(s);
    case MechanismId::NashOptimal: {
      std::vector<Valuation> types;
      for (const auto& st : s) types.push_back(st.reported_type);
      return run_nash_optimal(types);
    }
  }
  throw std::logic_error("unknown mechanism");
}

}  // namespace cakecut
