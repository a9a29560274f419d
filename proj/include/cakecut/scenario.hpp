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

#include "cakecut/mechanisms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cakecut {

struct FamilySpec {
  Rational h;
  std::vector<Rational> density_menu;
};

struct AnalysisSpec {
  AgentId target_agent = 0;
  FamilySpec manipulation_family;
  FamilySpec adversary_family;
};

struct AgentSpec {
  Valuation true_type;
  std::optional<Valuation> played_type;  // empty means truthful

  const Valuation& reported() const { return played_type ? *played_type : true_type; }
};

struct Scenario {
  MechanismId mechanism;
  std::size_t n = 0;
  std::vector<AgentSpec> agents;
  std::optional<AnalysisSpec> analysis;
};

/// Parses a scenario document. Throws ParseError naming the line or field,
/// or ArityError when the agent count does not fit the mechanism.
Scenario parse_scenario(const std::string& text, const FamilySpec& defaults);
Scenario load_scenario(const std::string& path, const FamilySpec& defaults);

/// Parses a bare valuation document: a list of [start, end, density] triples.
Valuation parse_valuation_text(const std::string& text);

}  // namespace cakecut
