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

#include "cakecut/report.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cakecut {

struct Check {
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct Reproduction {
  std::string target;
  report::ordered_json results;
  std::vector<Check> checks;

  bool passed() const;
  report::ordered_json to_json() const;
};

std::span<const std::string_view> reproduce_targets();

/// Runs the canned scenarios behind a target and asserts the expected values.
/// Throws std::invalid_argument for an unknown target.
Reproduction reproduce(std::string_view target, const FamilySpec& defaults);

/// Step function with mass 1/4 on [0, 1/10], 1/2 on [2/5, 3/5] and 1/4 on [9/10, 1].
Valuation three_block_type();

}  // namespace cakecut
