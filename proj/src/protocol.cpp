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

#include "cakecut/protocol.hpp"

#include "cakecut/lp.hpp"

#include <algorithm>
#include <set>

namespace cakecut {

AgentId query_agent(const Query& q) {
  return std::visit([](const auto& v) { return v.agent; }, q);
}

Rational answer(const Strategy& s, const Query& q) {
  if (const auto* c = std::get_if<CutQuery>(&q)) {
    try {
      return cut(s.reported_type, c->x, c->alpha);
    } catch (const Unsatisfiable& e) {
      throw Unsatisfiable("agent " + std::to_string(c->agent) + ": " + e.what());
    }
  }
  const auto& e = std::get<EvalQuery>(q);
  return eval(s.reported_type, e.x, e.y);
}

QueryTrace::QueryTrace() : cut_points_{Rational(0), Rational(1)} {}

QueryTrace QueryTrace::from_entries(std::vector<TraceEntry> entries) {
  QueryTrace t;
  t.entries_ = std::move(entries);
  std::set<Rational> pts(t.cut_points_.begin(), t.cut_points_.end());
  for (const auto& e : t.entries_)
    if (std::holds_alternative<CutQuery>(e.query)) pts.insert(e.answer);
  t.cut_points_.assign(pts.begin(), pts.end());
  return t;
}

bool QueryTrace::is_cut_point(const Rational& p) const {
  return std::binary_search(cut_points_.begin(), cut_points_.end(), p);
}

void QueryTrace::record(const Query& q, const Rational& a) {
  if (const auto* c = std::get_if<CutQuery>(&q)) {
    if (!is_cut_point(c->x)) throw ProtocolError("cut query starts at " + to_string(c->x) + ", which is not a cut point");
    if (a < c->x || a > 1) throw ProtocolError("cut answer outside [x, 1]");
    auto it = std::lower_bound(cut_points_.begin(), cut_points_.end(), a);
    if (it == cut_points_.end() || *it != a) cut_points_.insert(it, a);
  } else {
    const auto& e = std::get<EvalQuery>(q);
    if (!is_cut_point(e.x) || !is_cut_point(e.y)) throw ProtocolError("eval query endpoints must be cut points");
    if (a < 0 || a > 1) throw ProtocolError("eval answer outside [0, 1]");
  }
  entries_.push_back({q, a});
}

Rational ask(const std::vector<Strategy>& strategies, QueryTrace& trace, const Query& q) {
  Rational a = answer(strategies.at(query_agent(q)), q);
  trace.record(q, a);
  return a;
}

bool check_consistency(const QueryTrace& trace, AgentId agent) {
  std::vector<const TraceEntry*> mine;
  std::set<Rational> pts{Rational(0), Rational(1)};
  for (const auto& e : trace.entries()) {
    if (query_agent(e.query) != agent) continue;
    mine.push_back(&e);
    if (const auto* c = std::get_if<CutQuery>(&e.query)) {
      if (e.answer < c->x || e.answer > 1 || c->x < 0) return false;
      if (c->alpha == 0 && e.answer != c->x) return false;
      if (c->alpha > 0 && e.answer == c->x) return false;
      pts.insert(c->x);
      pts.insert(e.answer);
    } else {
      const auto& q = std::get<EvalQuery>(e.query);
      if (q.y < q.x || q.x < 0 || q.y > 1 || e.answer < 0 || e.answer > 1) return false;
      pts.insert(q.x);
      pts.insert(q.y);
    }
  }
  if (mine.empty()) return true;

  const std::vector<Rational> p(pts.begin(), pts.end());
  const Eigen::Index cells = static_cast<Eigen::Index>(p.size()) - 1;
  const Eigen::Index slack = cells;  // strictness margin variable
  auto cell_of = [&](const Rational& left) {
    return static_cast<Eigen::Index>(std::lower_bound(p.begin(), p.end(), left) - p.begin());
  };
  auto span_row = [&](const Rational& a, const Rational& b) {
    lp::Vector<Rational> row = lp::Vector<Rational>::Zero(cells + 1);
    for (Eigen::Index c = cell_of(a); c < cell_of(b); ++c) row(c) = 1;
    return row;
  };

  lp::Problem<Rational> prob(cells + 1);
  prob.objective(slack) = 1;
  prob.add_eq(span_row(Rational(0), Rational(1)), Rational(1));
  lp::Vector<Rational> cap = lp::Vector<Rational>::Zero(cells + 1);
  cap(slack) = 1;
  prob.add_le(cap, Rational(1));
  bool strict = false;
  for (const TraceEntry* e : mine) {
    if (const auto* c = std::get_if<CutQuery>(&e->query)) {
      prob.add_eq(span_row(c->x, e->answer), c->alpha);
      if (c->alpha > 0) {
        // minimality: the cell just left of the answer carries positive mass
        lp::Vector<Rational> row = lp::Vector<Rational>::Zero(cells + 1);
        row(cell_of(e->answer) - 1) = 1;
        row(slack) = -1;
        prob.add_ge(row, Rational(0));
        strict = true;
      }
    } else {
      const auto& q = std::get<EvalQuery>(e->query);
      prob.add_eq(span_row(q.x, q.y), e->answer);
    }
  }
  auto sol = lp::maximize(prob);
  if (sol.status != lp::Status::Optimal) return false;
  return !strict || sol.value > 0;
}

bool check_consistency(const QueryTrace& trace) {
  std::set<AgentId> agents;
  for (const auto& e : trace.entries()) agents.insert(query_agent(e.query));
  return std::all_of(agents.begin(), agents.end(), [&](AgentId a) { return check_consistency(trace, a); });
}

}  // namespace cakecut
