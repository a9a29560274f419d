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

#include "cakecut/scenario.hpp"

#include "cakecut/families.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cakecut {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

Rational scalar(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(field, e.what());
    }
  }
  if (j.is_number_float()) fail(field, "inexact number; write it as a string such as \"1/10\" or \"0.1\"");
  fail(field, "expected a rational");
}

Valuation valuation(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty list of [start, end, density]");
  std::vector<Segment> segs;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    const json& t = j[k];
    if (!t.is_array() || t.size() != 3) fail(f, "expected [start, end, density]");
    segs.push_back({scalar(t[0], f + "[0]"), scalar(t[1], f + "[1]"), scalar(t[2], f + "[2]")});
  }
  try {
    return Valuation(std::move(segs));
  } catch (const InvalidValuation& e) {
    fail(field, e.what());
  }
}

FamilySpec family(const json& j, const std::string& field, const FamilySpec& defaults) {
  FamilySpec f = defaults;
  if (j.is_null()) return f;
  if (!j.is_object()) fail(field, "expected an object");
  for (const auto& [key, _] : j.items())
    if (key != "h" && key != "density_menu") fail(field + "." + key, "unknown field");
  if (j.contains("h")) f.h = scalar(j["h"], field + ".h");
  try {
    families::check_grid_step(f.h);
  } catch (const std::invalid_argument& e) {
    fail(field + ".h", e.what());
  }
  if (j.contains("density_menu")) {
    const json& m = j["density_menu"];
    if (!m.is_array() || m.empty()) fail(field + ".density_menu", "expected a non-empty list");
    f.density_menu.clear();
    for (std::size_t k = 0; k < m.size(); ++k) {
      Rational d = scalar(m[k], field + ".density_menu[" + std::to_string(k) + "]");
      if (d < 0) fail(field + ".density_menu[" + std::to_string(k) + "]", "density must be non-negative");
      f.density_menu.push_back(d);
    }
  }
  if (std::none_of(f.density_menu.begin(), f.density_menu.end(), [](const Rational& d) { return d > 0; }))
    fail(field + ".density_menu", "needs a positive entry");
  return f;
}

void only_keys(const json& j, const std::string& field, std::initializer_list<const char*> keys) {
  for (const auto& [key, _] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
      fail(field.empty() ? key : field + "." + key, "unknown field");
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Scenario parse_scenario(const std::string& text, const FamilySpec& defaults) {
  const json j = parse_json(text);
  if (!j.is_object()) fail("scenario", "expected an object");
  only_keys(j, "", {"mechanism", "n", "agents", "analysis"});

  if (!j.contains("mechanism") || !j["mechanism"].is_string()) fail("mechanism", "expected a mechanism name");
  const auto m = parse_mechanism(j["mechanism"].get<std::string>());
  if (!m) fail("mechanism", "unknown mechanism '" + j["mechanism"].get<std::string>() + "'");
  Scenario s{*m, 0, {}, std::nullopt};

  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
    fail("n", "expected a positive integer");
  s.n = j["n"].get<std::size_t>();

  if (!j.contains("agents") || !j["agents"].is_array()) fail("agents", "expected a list");
  const json& agents = j["agents"];
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string f = "agents[" + std::to_string(i) + "]";
    const json& a = agents[i];
    if (!a.is_object()) fail(f, "expected an object");
    only_keys(a, f, {"true_type", "played_type"});
    if (!a.contains("true_type")) fail(f + ".true_type", "missing");
    AgentSpec spec{valuation(a["true_type"], f + ".true_type"), std::nullopt};
    if (a.contains("played_type") && !(a["played_type"].is_string() && a["played_type"] == "truthful"))
      spec.played_type = valuation(a["played_type"], f + ".played_type");
    s.agents.push_back(std::move(spec));
  }
  if (s.agents.size() != s.n)
    throw ArityError("agents: " + std::to_string(s.agents.size()) + " agents listed but n is " + std::to_string(s.n));
  check_arity(s.mechanism, s.n);

  if (j.contains("analysis")) {
    const json& a = j["analysis"];
    if (!a.is_object()) fail("analysis", "expected an object");
    only_keys(a, "analysis", {"target_agent", "manipulation_family", "adversary_family"});
    AnalysisSpec spec;
    if (a.contains("target_agent")) {
      if (!a["target_agent"].is_number_unsigned()) fail("analysis.target_agent", "expected an agent index");
      spec.target_agent = a["target_agent"].get<std::size_t>();
      if (spec.target_agent >= s.n) fail("analysis.target_agent", "out of range");
    }
    spec.manipulation_family = family(a.value("manipulation_family", json()), "analysis.manipulation_family", defaults);
    spec.adversary_family = family(a.value("adversary_family", json()), "analysis.adversary_family", defaults);
    s.analysis = std::move(spec);
  }
  return s;
}

Scenario load_scenario(const std::string& path, const FamilySpec& defaults) {
  try {
    return parse_scenario(read_file(path), defaults);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Valuation parse_valuation_text(const std::string& text) { return valuation(parse_json(text), "valuation"); }

}  // namespace cakecut
