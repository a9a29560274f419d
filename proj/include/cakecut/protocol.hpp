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

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

namespace cakecut {

using AgentId = std::size_t;

struct CutQuery {
  AgentId agent;
  Rational x;
  Rational alpha;
};

struct EvalQuery {
  AgentId agent;
  Rational x;
  Rational y;
};

using Query = std::variant<CutQuery, EvalQuery>;

AgentId query_agent(const Query& q);

/// An answer policy: truthful answers for `reported_type`. A manipulation is a
/// strategy whose reported type differs from the agent's true type.
struct Strategy {
  Valuation reported_type;

  static Strategy truthful(const Valuation& v) { return Strategy{v}; }
};

Rational answer(const Strategy& s, const Query& q);

struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

struct TraceEntry {
  Query query;
  Rational answer;
};

/// The queries and answers of one mechanism run, in order.
class QueryTrace {
 public:
  QueryTrace();
  /// Wraps externally supplied entries without endpoint validation (for audit and replay).
  static QueryTrace from_entries(std::vector<TraceEntry> entries);

  /// Validates query endpoints against existing cut points and records the answer.
  void record(const Query& q, const Rational& answer);
  bool is_cut_point(const Rational& p) const;

  const std::vector<TraceEntry>& entries() const { return entries_; }
  const std::vector<Rational>& cut_points() const { return cut_points_; }

 private:
  std::vector<TraceEntry> entries_;
  std::vector<Rational> cut_points_;  // sorted
};

/// Asks `q` of the agent it addresses and records the answer.
Rational ask(const std::vector<Strategy>& strategies, QueryTrace& trace, const Query& q);

/// True iff some piecewise-constant type answers every recorded query of `agent` truthfully.
bool check_consistency(const QueryTrace& trace, AgentId agent);
/// True iff every agent appearing in the trace is consistent.
bool check_consistency(const QueryTrace& trace);

}  // namespace cakecut
