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

#include "cakecut/protocol.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cakecut {

enum class MechanismId {
  CutAndChoose,
  CutMiddle,
  LastDiminisher,
  MovingKnife,
  LeftmostLeaves,
  LeftmostLeavesEvenPaz,
  LeftmostLeavesModified,
  SelfridgeConway,
  NashOptimal,
};

std::string_view mechanism_name(MechanismId m);
/// Accepts the kebab-case names used on the command line and in scenario files.
std::optional<MechanismId> parse_mechanism(std::string_view name);
std::span<const MechanismId> all_mechanisms();

struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void check_arity(MechanismId m, std::size_t n);
/// Mechanisms that hand every agent a single interval.
bool is_connected_mechanism(MechanismId m);

/// One period of a round-based mechanism: every remaining agent's cut and the winner.
struct RoundRecord {
  int period = 0;
  std::vector<std::pair<AgentId, Rational>> cuts;
  AgentId winner = 0;
  Rational winning_cut;
};

struct Outcome {
  Allocation allocation;
  QueryTrace trace;
  std::vector<RoundRecord> rounds;
};

Outcome run_cut_and_choose(const Strategy& cutter, const Strategy& chooser);
Outcome run_cut_middle(const Strategy& first, const Strategy& second);
Outcome run_last_diminisher(const std::vector<Strategy>& strategies);
Outcome run_moving_knife(const std::vector<Strategy>& strategies);
Outcome run_leftmost_leaves(const std::vector<Strategy>& strategies);
/// Every period asks for 1/n of the whole cake instead of a 1/(remaining) share.
Outcome run_leftmost_leaves_modified(const std::vector<Strategy>& strategies);
Outcome run_leftmost_leaves_even_paz(const std::vector<Strategy>& strategies);
Outcome run_selfridge_conway(const std::vector<Strategy>& strategies);
/// Direct revelation: maximizes the product of reported utilities.
Outcome run_nash_optimal(const std::vector<Valuation>& reported_types);

Outcome run(MechanismId m, const std::vector<Strategy>& strategies);

}  // namespace cakecut
