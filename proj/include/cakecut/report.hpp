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

#include "cakecut/analysis.hpp"
#include "cakecut/scenario.hpp"

#include <json.hpp>

#include <string>

namespace cakecut::report {

using nlohmann::ordered_json;

enum class Format { Json, Table };

/// {"exact": "p/q", "decimal": approx}
ordered_json rational(const Rational& r);
ordered_json valuation(const Valuation& v);
ordered_json allocation(const Allocation& a);
ordered_json bound(const ScenarioBound& b);
ordered_json manipulation(const ManipulationReport& r);
ordered_json certificate(const NomCertificate& c);
ordered_json lemmas(const LemmaCheck& c);
ordered_json knife(const KnifeConditional& k);
ordered_json nash_bounds(const NashDirectBounds& b);

/// Runs the mechanism and any requested analysis. The result depends only on the scenario.
ordered_json run_scenario(const Scenario& s);

std::string render(const ordered_json& report, Format format);

}  // namespace cakecut::report
