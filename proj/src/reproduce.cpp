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

#include "cakecut/reproduce.hpp"

#include "cakecut/families.hpp"
#include "cakecut/nash.hpp"

#include <array>
#include <stdexcept>

namespace cakecut {

namespace {

using report::ordered_json;

const Rational kDelta(1, 200);
const Rational kEps(1, 100);

std::string show(const Rational& r) { return to_string(r) + " (" + std::to_string(to_double(r)) + ")"; }

void expect(Reproduction& r, std::string claim, bool ok, std::string detail) {
  r.checks.push_back({std::move(claim), ok, std::move(detail)});
}

std::vector<Rational> epsilons() { return {Rational(1, 100), Rational(1, 1000)}; }

void theorem1(Reproduction& r, const FamilySpec& d) {
  const Valuation blue = three_block_type();
  const AdversaryFamily adv = grid_adversaries(d.h, epsilons());

  std::vector<Candidate> cc{{"cut at 2/5", type_cutting_at(Rational(2, 5), Rational(1, 2))}};
  for (Candidate& c : grid_candidates(d.h, d.density_menu)) cc.push_back(std::move(c));
  auto c1 = find_obvious_manipulation(MechanismId::CutAndChoose, 0, 2, blue, cc, adv, SearchMode::First);
  r.results["cut-and-choose"] = c1 ? report::manipulation(*c1) : ordered_json();
  expect(r, "cut-and-choose is obviously manipulable through the best case",
         c1 && c1->verdict == Verdict::ObviousViaSup && c1->truthful.sup == Rational(1, 2) &&
             c1->manipulated.sup >= Rational(3, 4),
         c1 ? "truthful sup " + show(c1->truthful.sup) + ", manipulated sup " + show(c1->manipulated.sup)
            : "no witness");

  auto c2 = find_obvious_manipulation(MechanismId::CutMiddle, 0, 2, blue, grid_candidates(d.h, d.density_menu), adv,
                                      SearchMode::Best);
  r.results["cut-middle"] = c2 ? report::manipulation(*c2) : ordered_json();
  expect(r, "cut-middle is obviously manipulable through the best case",
         c2 && c2->verdict == Verdict::ObviousViaSup && c2->truthful.sup == Rational(3, 4) &&
             c2->manipulated.sup >= 1 - 10 * d.h,
         c2 ? "truthful sup " + show(c2->truthful.sup) + ", manipulated sup " + show(c2->manipulated.sup)
            : "no witness");

  const Valuation left_half = Valuation::uniform_on(Rational(0), Rational(1, 2));
  ManipulationReport c3 = last_diminisher_undercut(left_half, Rational(1, 2), kEps);
  r.results["last-diminisher"] = report::manipulation(c3);
  expect(r, "last diminisher: undercutting the previous cut is an obvious manipulation",
         is_obvious(c3.verdict) && c3.truthful.sup == Rational(1, 2) &&
             c3.manipulated.inf - c3.truthful.sup >= Rational(48, 100),
         "truthful " + show(c3.truthful.sup) + ", undercut " + show(c3.manipulated.inf));

  KnifeConditional k = moving_knife_conditional_sup(Valuation::uniform(), kEps);
  r.results["moving-knife"] = report::knife(k);
  expect(r, "moving knife: delaying the stop beats stopping at the half point",
         k.verdict == Verdict::ObviousViaSup && k.truthful_value == Rational(1, 2) && k.manipulated_sup >= 1 - kEps,
         "truthful " + show(k.truthful_value) + ", delayed " + show(k.manipulated_sup));
}

void lemmas12(Reproduction& r, const FamilySpec&) {
  ordered_json out = ordered_json::array();
  for (const Valuation& v : {Valuation::uniform(), three_block_type()})
    for (std::size_t n = 2; n <= 4; ++n) {
      LemmaCheck c = check_leftmost_leaves_lemmas(n, v, epsilons());
      out.push_back(report::lemmas(c));
      expect(r, "leftmost leaves worst case equals 1/" + std::to_string(n), c.lemma1_exact, show(c.worst_case));
      expect(r, "leftmost leaves best case is within c*eps of the whole cake (n = " + std::to_string(n) + ")",
             c.lemma2_holds, show(c.best_case.back().second));
    }
  r.results["lemmas"] = std::move(out);
}

void theorem2(Reproduction& r, const FamilySpec& d) {
  ordered_json certs = ordered_json::array();
  for (const Valuation& v : {Valuation::uniform(), three_block_type()})
    for (std::size_t n = 2; n <= 3; ++n) {
      NomCertificate c = certify_nom_leftmost_leaves(n, v, d.h, d.density_menu);
      certs.push_back(report::certificate(c));
      expect(r, "leftmost leaves has no obvious manipulation in the grid family (n = " + std::to_string(n) + ")",
             c.passed, "max manipulated inf " + show(c.max_manipulated_inf));
    }
  r.results["certificates"] = std::move(certs);
  lemmas12(r, d);
}

void remark(Reproduction& r, const FamilySpec& d) {
  ManipulationReport m =
      modified_leftmost_leaves_remark(5, Valuation::uniform(), Rational(1, 10), grid_adversaries(d.h));
  r.results["modified-leftmost-leaves"] = report::manipulation(m);
  expect(r, "modified leftmost leaves is obviously manipulable through the worst case",
         m.verdict == Verdict::ObviousViaInf && m.truthful.inf == Rational(1, 5) && m.manipulated.inf == Rational(9, 40),
         "truthful inf " + show(m.truthful.inf) + ", manipulated inf " + show(m.manipulated.inf));
}

void selfridge(Reproduction& r, const FamilySpec& d) {
  SelfridgeWitness w = selfridge_conway_om_witness(Valuation::uniform(), kDelta, grid_adversaries(d.h, epsilons()));
  r.results["selfridge-conway"] = report::manipulation(w.report);
  r.results["untrimmed_share"] = report::rational(w.untrimmed_share);
  r.results["trim_bound"] = report::rational(w.trim_bound);
  expect(r, "Selfridge-Conway first cutter is obviously manipulable through the best case",
         w.report.verdict == Verdict::ObviousViaSup && w.report.truthful.sup <= w.untrimmed_share + w.trim_bound &&
             w.report.manipulated.sup >= Rational(99, 100),
         "truthful sup " + show(w.report.truthful.sup) + ", manipulated sup " + show(w.report.manipulated.sup));

  const std::vector<Valuation> truth{Valuation::uniform(), three_block_type(),
                                     Valuation::uniform_on(Rational(1, 4), Rational(1))};
  std::vector<Strategy> s;
  for (const Valuation& v : truth) s.push_back(Strategy{v});
  Outcome o = run_selfridge_conway(s);
  r.results["truthful_run"] = report::allocation(o.allocation);
  expect(r, "Selfridge-Conway truthful run is envy-free", check_envy_free(o.allocation, truth), "");
}

void theorem3(Reproduction& r, const FamilySpec&) {
  const double tol = 1e-9;
  const std::vector<std::vector<Valuation>> instances{
      {Valuation::uniform(), three_block_type()},
      {Valuation::uniform(), three_block_type(), Valuation::uniform_on(Rational(1, 4), Rational(3, 4))},
      {Valuation::uniform_on(Rational(0), Rational(1, 2)), Valuation::uniform()},
  };
  ordered_json runs = ordered_json::array();
  const Rational h(1, 4);
  const std::vector<Candidate> fakes = grid_candidates(h, families::default_menu());
  for (const auto& truth : instances) {
    Outcome o = run_nash_optimal(truth);
    const std::size_t n = truth.size();
    const Rational share = Rational(1) / Rational(static_cast<long>(n));
    ordered_json run;
    run["allocation"] = report::allocation(o.allocation);
    run["utilities"] = ordered_json::array();
    for (const Rational& u : utilities(o.allocation, truth)) run["utilities"].push_back(report::rational(u));
    const bool pareto = check_pareto(o.allocation, truth, Rational(tol));
    const bool ef = check_envy_free(o.allocation, truth);
    const bool prop = check_proportional(o.allocation, truth);
    expect(r, "Nash-optimal allocation is envy-free, proportional and Pareto-optimal (n = " + std::to_string(n) + ")",
           ef && prop && pareto, "");

    std::size_t obvious = 0;
    Rational worst_clone(0);
    for (const Candidate& c : fakes) {
      NashDirectBounds b = direct_revelation_bounds_nash(0, n, truth[0], c.type, Rational(1, 100), tol);
      worst_clone = max(worst_clone, b.clone_manipulated);
      if (is_obvious(b.verdict)) ++obvious;
    }
    run["max_clone_manipulated"] = report::rational(worst_clone);
    run["obvious_verdicts"] = obvious;
    expect(r, "clone profile caps every grid manipulation at 1/n",
           to_double(worst_clone) <= to_double(share) + tol, show(worst_clone));
    expect(r, "no grid manipulation of the Nash-optimal rule is obvious", obvious == 0, std::to_string(obvious));

    NashDirectBounds tiny = direct_revelation_bounds_nash(0, n, truth[0], truth[0], Rational(1, 100), tol);
    run["tiny_support_truthful"] = report::rational(tiny.tiny_support_truthful);
    expect(r, "tiny-support opponents leave almost the whole cake to a truthful agent",
           tiny.tiny_support_truthful >= Rational(99, 100), show(tiny.tiny_support_truthful));
    runs.push_back(std::move(run));
  }
  r.results["instances"] = std::move(runs);
}

constexpr std::array<std::string_view, 6> kTargets{"theorem1", "theorem2", "theorem3", "remark", "selfridge", "lemmas12"};

}  // namespace

Valuation three_block_type() {
  std::vector<Rational> breaks{Rational(0), Rational(1, 10), Rational(2, 5), Rational(3, 5), Rational(9, 10), Rational(1)};
  std::vector<Rational> dens{Rational(1), Rational(0), Rational(1), Rational(0), Rational(1)};
  return Valuation::from_densities(breaks, dens);
}

bool Reproduction::passed() const {
  for (const Check& c : checks)
    if (!c.passed) return false;
  return true;
}

report::ordered_json Reproduction::to_json() const {
  ordered_json j;
  j["target"] = target;
  j["passed"] = passed();
  j["checks"] = ordered_json::array();
  for (const Check& c : checks) {
    ordered_json e;
    e["claim"] = c.claim;
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["checks"].push_back(std::move(e));
  }
  j["results"] = results;
  return j;
}

std::span<const std::string_view> reproduce_targets() { return kTargets; }

Reproduction reproduce(std::string_view target, const FamilySpec& defaults) {
  families::check_grid_step(defaults.h);
  Reproduction r{std::string(target), ordered_json::object(), {}};
  if (target == "theorem1") theorem1(r, defaults);
  else if (target == "theorem2") theorem2(r, defaults);
  else if (target == "theorem3") theorem3(r, defaults);
  else if (target == "remark") remark(r, defaults);
  else if (target == "selfridge") selfridge(r, defaults);
  else if (target == "lemmas12") lemmas12(r, defaults);
  else throw std::invalid_argument("unknown reproduce target '" + std::string(target) + "'");
  return r;
}

}  // namespace cakecut
