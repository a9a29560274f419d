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

#include "cakecut/report.hpp"

#include "cakecut/families.hpp"

#include <sstream>

namespace cakecut::report {

namespace {

std::string_view method_name(BoundMethod m) { return m == BoundMethod::Analytic ? "analytic" : "grid"; }

std::string_view formula_name(FormulaTag t) {
  switch (t) {
    case FormulaTag::None:
      return "none";
    case FormulaTag::Lemma1:
      return "worst-case-share";
    case FormulaTag::Lemma2:
      return "remaining-cake";
    case FormulaTag::FullCake:
      return "full-cake";
    case FormulaTag::Custom:
      return "custom";
  }
  return "?";
}

ordered_json witness(const Witness& w) {
  ordered_json j;
  j["label"] = w.label;
  ordered_json ops = ordered_json::array();
  for (const Valuation& v : w.opponents) ops.push_back(valuation(v));
  j["opponents"] = std::move(ops);
  return j;
}

ordered_json rationals(const std::vector<Rational>& rs) {
  ordered_json j = ordered_json::array();
  for (const Rational& r : rs) j.push_back(rational(r));
  return j;
}

bool is_rational(const ordered_json& j) {
  return j.is_object() && j.size() == 2 && j.contains("exact") && j.contains("decimal");
}

void flatten(const ordered_json& j, const std::string& path, std::ostringstream& out) {
  if (is_rational(j)) {
    out << path << "  " << j["exact"].get<std::string>() << "  (" << j["decimal"].dump() << ")\n";
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << "  []\n";
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], path + "[" + std::to_string(k) + "]", out);
  } else {
    out << path << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

AdversaryFamily scenario_adversaries(const FamilySpec& f) {
  AdversaryFamily a;
  a.h = f.h;
  a.types = families::bump_family(f.h, f.density_menu);
  a.include_clone = true;
  return a;
}

}  // namespace

ordered_json rational(const Rational& r) {
  ordered_json j;
  j["exact"] = to_string(r);
  j["decimal"] = to_double(r);
  return j;
}

ordered_json valuation(const Valuation& v) {
  ordered_json j = ordered_json::array();
  for (const Segment& s : v.segments()) j.push_back({to_string(s.start), to_string(s.end), to_string(s.density)});
  return j;
}

ordered_json allocation(const Allocation& a) {
  ordered_json j = ordered_json::array();
  for (const Piece& p : a.pieces) {
    ordered_json piece = ordered_json::array();
    for (const Interval& iv : p.intervals()) piece.push_back({to_string(iv.start), to_string(iv.end)});
    j.push_back(std::move(piece));
  }
  return j;
}

ordered_json bound(const ScenarioBound& b) {
  ordered_json j;
  j["inf"] = rational(b.inf);
  j["sup"] = rational(b.sup);
  j["method"] = method_name(b.method);
  if (b.method == BoundMethod::Grid) {
    j["h"] = to_string(b.h);
    j["family_size"] = b.family_size;
  } else {
    j["formula"] = formula_name(b.formula);
  }
  if (!b.inf_witness.label.empty()) j["inf_witness"] = witness(b.inf_witness);
  if (!b.sup_witness.label.empty()) j["sup_witness"] = witness(b.sup_witness);
  return j;
}

ordered_json manipulation(const ManipulationReport& r) {
  ordered_json j;
  j["mechanism"] = mechanism_name(r.mechanism);
  j["agent"] = r.agent;
  j["true_type"] = valuation(r.true_type);
  j["fake_type"] = valuation(r.fake_type);
  j["fake_label"] = r.fake_label;
  j["truthful"] = bound(r.truthful);
  j["manipulated"] = bound(r.manipulated);
  j["profitable"] = r.profitable;
  j["maximin_violated"] = r.maximin_violated;
  j["verdict"] = verdict_name(r.verdict);
  return j;
}

ordered_json certificate(const NomCertificate& c) {
  ordered_json j;
  j["n"] = c.n;
  j["h"] = to_string(c.h);
  j["fake_types"] = c.fake_types;
  j["adversary_profiles"] = c.adversary_profiles;
  j["truthful_grid"] = bound(c.truthful);
  j["truthful_analytic"] = bound(c.analytic);
  j["max_manipulated_inf"] = rational(c.max_manipulated_inf);
  j["max_observed_manipulated_sup"] = rational(c.max_manipulated_sup);
  j["passed"] = c.passed;
  if (c.violation) j["violation"] = manipulation(*c.violation);
  j["scope"] = c.scope;
  return j;
}

ordered_json lemmas(const LemmaCheck& c) {
  ordered_json j;
  j["n"] = c.n;
  j["worst_case"] = rational(c.worst_case);
  j["worst_case_is_one_over_n"] = c.lemma1_exact;
  ordered_json best = ordered_json::array();
  for (const auto& [eps, u] : c.best_case) {
    ordered_json e;
    e["eps"] = to_string(eps);
    e["utility"] = rational(u);
    e["bound"] = rational(1 - c.density_bound * eps);
    best.push_back(std::move(e));
  }
  j["best_case"] = std::move(best);
  j["density_bound"] = to_string(c.density_bound);
  j["best_case_within_bound"] = c.lemma2_holds;
  return j;
}

ordered_json knife(const KnifeConditional& k) {
  ordered_json j;
  j["reached_point"] = rational(k.reached_point);
  j["truthful_value"] = rational(k.truthful_value);
  j["delayed_stop"] = rational(k.delayed_stop);
  j["manipulated_sup"] = rational(k.manipulated_sup);
  j["verdict"] = verdict_name(k.verdict);
  return j;
}

ordered_json nash_bounds(const NashDirectBounds& b) {
  ordered_json j;
  j["clone_truthful"] = rational(b.clone_truthful);
  j["clone_manipulated"] = rational(b.clone_manipulated);
  j["tiny_support_truthful"] = rational(b.tiny_support_truthful);
  j["sliver_start"] = rational(b.sliver_start);
  j["truthful"] = bound(b.truthful);
  j["manipulated"] = bound(b.manipulated);
  j["verdict"] = verdict_name(b.verdict);
  return j;
}

ordered_json run_scenario(const Scenario& s) {
  std::vector<Strategy> strategies;
  std::vector<Valuation> truth;
  for (const AgentSpec& a : s.agents) {
    strategies.push_back(Strategy{a.reported()});
    truth.push_back(a.true_type);
  }
  Outcome out = run(s.mechanism, strategies);

  ordered_json j;
  j["mechanism"] = mechanism_name(s.mechanism);
  j["n"] = s.n;
  j["determinism"] = "no randomness; identical scenarios give identical reports";
  j["allocation"] = allocation(out.allocation);
  j["utilities"] = rationals(utilities(out.allocation, truth));
  ordered_json fair;
  fair["proportional"] = check_proportional(out.allocation, truth);
  fair["envy_free"] = check_envy_free(out.allocation, truth);
  fair["pareto_optimal"] = check_pareto(out.allocation, truth, Rational(0));
  j["fairness"] = std::move(fair);
  j["queries"] = out.trace.entries().size();
  j["trace_consistent"] = check_consistency(out.trace);

  if (!s.analysis) return j;
  const AnalysisSpec& a = *s.analysis;
  const AgentId i = a.target_agent;
  const Valuation& true_type = s.agents[i].true_type;
  ordered_json an;
  an["target_agent"] = i;

  std::vector<Candidate> candidates;
  if (s.agents[i].played_type) candidates.push_back({"played_type", *s.agents[i].played_type});
  for (Candidate& c : grid_candidates(a.manipulation_family.h, a.manipulation_family.density_menu))
    candidates.push_back(std::move(c));

  if (s.mechanism == MechanismId::NashOptimal) {
    // Direct revelation: the clone and tiny-support profiles bound each fake.
    const Rational delta = a.adversary_family.h / 2;
    std::optional<ordered_json> found;
    std::size_t checked = 0;
    for (const Candidate& c : candidates) {
      if (c.type == true_type) continue;
      ++checked;
      NashDirectBounds b = direct_revelation_bounds_nash(i, s.n, true_type, c.type, delta, 1e-9);
      if (c.label == "played_type") an["played_type"] = nash_bounds(b);
      if (!found && is_obvious(b.verdict)) {
        found = nash_bounds(b);
        (*found)["fake_label"] = c.label;
      }
    }
    an["candidates_checked"] = checked;
    an["obvious_manipulation"] = found ? *found : ordered_json();
    j["analysis"] = std::move(an);
    return j;
  }

  const AdversaryFamily adv = scenario_adversaries(a.adversary_family);
  Bounds tb = bounds(s.mechanism, i, s.n, true_type, true_type, adv);
  an["truthful"] = bound(tb.grid);
  if (tb.analytic) an["truthful_analytic"] = bound(*tb.analytic);
  if (s.agents[i].played_type)
    an["played_type"] = manipulation(assess_manipulation(s.mechanism, i, s.n, true_type,
                                                         candidates.front(), adv));
  auto found = find_obvious_manipulation(s.mechanism, i, s.n, true_type, candidates, adv, SearchMode::First);
  an["candidates_checked"] = candidates.size();
  an["obvious_manipulation"] = found ? manipulation(*found) : ordered_json();
  j["analysis"] = std::move(an);
  return j;
}

std::string render(const ordered_json& report, Format format) {
  if (format == Format::Json) return report.dump(2) + "\n";
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace cakecut::report
