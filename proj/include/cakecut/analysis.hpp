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

enum class BoundMethod { Analytic, Grid };
enum class FormulaTag { None, Lemma1, Lemma2, FullCake, Custom };

/// Opponent types (in agent order, target excluded) behind a bound.
struct Witness {
  std::string label;
  std::vector<Valuation> opponents;
};

/// inf and sup of the target's true utility over a family of opponent profiles.
struct ScenarioBound {
  Rational inf;
  Rational sup;
  BoundMethod method = BoundMethod::Grid;
  Rational h{0};                  // grid resolution (Grid only)
  std::size_t family_size = 0;    // profiles examined (Grid only)
  FormulaTag formula = FormulaTag::None;
  Witness inf_witness;
  Witness sup_witness;
};

/// Opponent profiles for n - 1 opponents: every ordered tuple over `types`
/// (plus the target's true type when include_clone is set), the symbolic
/// epsilon profiles, and any explicit profiles.
struct AdversaryFamily {
  Rational h{0};
  std::vector<Valuation> types;
  bool include_clone = true;
  /// For each epsilon: all opponents uniform on [0, eps] (they take vanishing
  /// slivers from the left) and all uniform on [1 - eps, 1] (they never undercut).
  std::vector<Rational> epsilons;
  std::vector<Witness> explicit_profiles;
};

/// The cell family at step h with clones, and epsilon adversaries.
AdversaryFamily grid_adversaries(const Rational& h, std::vector<Rational> epsilons = {});

struct EmptyFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Bounds {
  ScenarioBound grid;
  std::optional<ScenarioBound> analytic;
};

/// Utility of `target`'s true type when it plays `played` and opponents report
/// their types truthfully.
Rational play_utility(MechanismId m, AgentId target, const Valuation& true_type, const Valuation& played,
                      const std::vector<Valuation>& opponents);

/// inf/sup over the family. For truthful leftmost leaves (and its moving-knife
/// and Even-Paz siblings at n = 2) also returns the analytic bounds 1/n and 1
/// and throws std::logic_error if the grid bounds escape them.
Bounds bounds(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type, const Valuation& played,
              const AdversaryFamily& family);

/// Worst case at a period of leftmost leaves: u([x, 1]) / remaining.
Rational lemma1_value(const Valuation& true_type, const Rational& left, std::size_t remaining);
/// Best case at a period of leftmost leaves: u([x, 1]).
Rational lemma2_value(const Valuation& true_type, const Rational& left);

enum class Verdict { ObviousViaSup, ObviousViaInf, NotObviousAtResolution, Profitable, NotProfitable };
std::string_view verdict_name(Verdict v);
bool is_obvious(Verdict v);

struct ManipulationReport {
  MechanismId mechanism;
  AgentId agent = 0;
  Valuation true_type;
  Valuation fake_type;
  std::string fake_label;
  ScenarioBound truthful;
  ScenarioBound manipulated;
  Verdict verdict = Verdict::NotProfitable;
  bool profitable = false;
  /// Condition (1) alone: the maximin half of the test.
  bool maximin_violated = false;
};

struct Candidate {
  std::string label;
  Valuation type;
};

/// Candidate fake types: the single-bump grid family at step h.
std::vector<Candidate> grid_candidates(const Rational& h, const std::vector<Rational>& menu);

enum class SearchMode { First, Best };

/// Scans candidates against the adversary family. Returns the first (or the
/// largest-margin) obvious manipulation, or nothing.
std::optional<ManipulationReport> find_obvious_manipulation(MechanismId m, AgentId target, std::size_t n,
                                                            const Valuation& true_type,
                                                            const std::vector<Candidate>& candidates,
                                                            const AdversaryFamily& adversaries,
                                                            SearchMode mode = SearchMode::First);

/// Evaluates one manipulation against the family and renders the verdict.
ManipulationReport assess_manipulation(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type,
                                       const Candidate& fake, const AdversaryFamily& adversaries);

/// Renders a verdict from a truthful and a manipulated bound. Violations must
/// exceed tol.
Verdict render_verdict(const ScenarioBound& truthful, const ScenarioBound& manipulated, bool profitable,
                       const Rational& tol = Rational(0));

struct NomCertificate {
  std::size_t n = 0;
  Rational h;
  std::size_t fake_types = 0;
  std::size_t adversary_profiles = 0;
  ScenarioBound truthful;                  // grid, over the whole adversary family
  ScenarioBound analytic;                  // 1/n and 1
  Rational max_manipulated_inf;            // largest witnessed upper bound on a fake's inf
  Rational max_manipulated_sup;
  bool passed = false;
  std::optional<ManipulationReport> violation;
  std::string scope;                       // what the certificate does and does not claim
};

/// Checks inequalities (1) and (2) for every single-bump fake type at step h.
/// Each fake's inf is bounded by scanning opponent profiles (clones first)
/// until one holds it at or below the truthful inf.
NomCertificate certify_nom_leftmost_leaves(std::size_t n, const Valuation& true_type, const Rational& h,
                                           const std::vector<Rational>& menu, AgentId target = 0);

struct LemmaCheck {
  std::size_t n = 0;
  Rational worst_case;            // min over the epsilon family
  bool lemma1_exact = false;      // worst_case == 1/n
  std::vector<std::pair<Rational, Rational>> best_case;  // (eps, utility)
  Rational density_bound;         // c = max density
  bool lemma2_holds = false;      // utility >= 1 - c * eps for every eps
};

/// Lemma 1 at t = 1 and the Lemma 2 limit for truthful leftmost leaves.
LemmaCheck check_leftmost_leaves_lemmas(std::size_t n, const Valuation& true_type,
                                        const std::vector<Rational>& epsilons, AgentId target = 0);

struct KnifeConditional {
  Rational reached_point;             // cut(true, 0, 1/2)
  Rational truthful_value;            // stopping now
  Rational delayed_stop;              // 1 - eps
  Rational manipulated_sup;           // u([0, 1 - eps]) if nobody else stops first
  Verdict verdict = Verdict::NotProfitable;
};

/// Two-agent moving knife at the information set "knife at x, nobody stopped".
KnifeConditional moving_knife_conditional_sup(const Valuation& true_type, const Rational& eps);

/// Two-agent last diminisher after agent 1 cut at `first_cut`: agent 2 (target)
/// answers truthfully or undercuts to first_cut - eps.
ManipulationReport last_diminisher_undercut(const Valuation& true_type, const Rational& first_cut,
                                            const Rational& eps);

/// Modified leftmost leaves, conditional on another agent winning period 1 at
/// `first_cut`: the target (last index) keeps asking for its leftmost-leaves
/// share instead of 1/n.
ManipulationReport modified_leftmost_leaves_remark(std::size_t n, const Valuation& true_type,
                                                   const Rational& first_cut, const AdversaryFamily& adversaries);

/// Fake type for the period after `left`: the true type on [left, 1], rescaled
/// so that 1/n of it equals the true remaining share, with the leftover mass on [0, left].
Valuation leftmost_share_fake(const Valuation& true_type, const Rational& left, std::size_t n,
                              std::size_t remaining);

struct SelfridgeWitness {
  ManipulationReport report;
  Rational untrimmed_share;   // 1/3: the first cutter keeps one of three equal pieces
  Rational trim_bound;        // the cutter's value of the trimmings is at most 1/3
};

/// Agent 1 of Selfridge-Conway cuts one piece of true value about 1 - 2 delta
/// and two slivers [0, delta], [delta, 2 delta].
SelfridgeWitness selfridge_conway_om_witness(const Valuation& true_type, const Rational& delta,
                                             const AdversaryFamily& adversaries);

struct NashDirectBounds {
  Rational clone_truthful;       // all opponents report the target's true type
  Rational clone_manipulated;    // same, target reports the fake
  Rational tiny_support_truthful;// opponents value only the sliver below
  Rational sliver_start;         // the width-delta grid window the target values least
  ScenarioBound truthful;
  ScenarioBound manipulated;
  Verdict verdict = Verdict::NotProfitable;
};

/// The clone and tiny-support constructions for the Nash-optimal mechanism.
NashDirectBounds direct_revelation_bounds_nash(AgentId target, std::size_t n, const Valuation& true_type,
                                               const Valuation& fake_type, const Rational& delta, double tol);

bool check_proportional(const Allocation& alloc, const std::vector<Valuation>& true_types);
bool check_envy_free(const Allocation& alloc, const std::vector<Valuation>& true_types);
/// False iff a fractional reallocation of the common refinement weakly helps
/// everyone and raises total utility by more than tol (exact LP).
bool check_pareto(const Allocation& alloc, const std::vector<Valuation>& true_types, const Rational& tol);

std::vector<Rational> utilities(const Allocation& alloc, const std::vector<Valuation>& true_types);

struct SweepResult {
  std::size_t profiles = 0;
  std::size_t violations = 0;
  std::vector<Valuation> witness;  // first violating profile, if any
  Rational min_margin;             // min over profiles and agents of u_i - 1/n
};

/// Runs every ordered n-tuple over `types` with all agents truthful and checks
/// each agent's utility against 1/n exactly.
SweepResult proportionality_sweep(MechanismId m, std::size_t n, const std::vector<Valuation>& types);

}  // namespace cakecut
