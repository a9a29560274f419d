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

#include "cakecut/analysis.hpp"

#include "cakecut/families.hpp"
#include "cakecut/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace cakecut {

namespace {

// Opponent profiles as index tuples into a pool of types. The first
// base^arity profiles form the full grid; explicit tuples follow.
struct ProfileSet {
  std::vector<Valuation> pool;
  std::vector<std::string> labels;
  std::size_t base = 0;
  std::size_t arity = 0;
  std::size_t grid_count = 0;
  std::vector<std::vector<std::size_t>> extra;
  std::optional<std::size_t> clone;

  std::size_t size() const { return grid_count + extra.size(); }

  void tuple(std::size_t p, std::vector<std::size_t>& out) const {
    out.resize(arity);
    if (p >= grid_count) {
      out = extra[p - grid_count];
      return;
    }
    for (std::size_t j = arity; j-- > 0;) {
      out[j] = p % base;
      p /= base;
    }
  }

  std::optional<std::size_t> clone_profile() const {
    if (!clone) return std::nullopt;
    std::size_t p = 0;
    for (std::size_t j = 0; j < arity; ++j) p = p * base + *clone;
    return p;
  }

  Witness witness(std::size_t p) const {
    std::vector<std::size_t> t;
    tuple(p, t);
    Witness w;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j) w.label += ", ";
      w.label += labels[t[j]];
      w.opponents.push_back(pool[t[j]]);
    }
    return w;
  }
};

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > (std::size_t{1} << 40) / base) throw std::length_error("opponent family too large");
    out *= base;
  }
  return out;
}

ProfileSet make_profiles(const AdversaryFamily& family, const Valuation& true_type, std::size_t arity) {
  ProfileSet s;
  s.arity = arity;
  for (std::size_t k = 0; k < family.types.size(); ++k) {
    s.pool.push_back(family.types[k]);
    s.labels.push_back("family[" + std::to_string(k) + "]");
  }
  if (family.include_clone) {
    s.clone = s.pool.size();
    s.pool.push_back(true_type);
    s.labels.push_back("clone");
  }
  s.base = s.pool.size();
  s.grid_count = s.base == 0 ? 0 : checked_power(s.base, arity);
  if (arity == 0) s.grid_count = 1;
  for (const Rational& eps : family.epsilons) {
    const std::string e = to_string(eps);
    s.pool.push_back(Valuation::uniform_on(Rational(0), eps));
    s.labels.push_back("uniform[0," + e + "]");
    s.extra.emplace_back(arity, s.pool.size() - 1);
    s.pool.push_back(Valuation::uniform_on(1 - eps, Rational(1)));
    s.labels.push_back("uniform[1-" + e + ",1]");
    s.extra.emplace_back(arity, s.pool.size() - 1);
  }
  for (const Witness& w : family.explicit_profiles) {
    if (w.opponents.size() != arity)
      throw std::invalid_argument("explicit profile '" + w.label + "' has the wrong number of opponents");
    std::vector<std::size_t> t;
    for (std::size_t j = 0; j < arity; ++j) {
      s.pool.push_back(w.opponents[j]);
      s.labels.push_back(w.label + "#" + std::to_string(j));
      t.push_back(s.pool.size() - 1);
    }
    s.extra.push_back(std::move(t));
  }
  return s;
}

// Reuses one strategy vector across profiles and only rewrites slots whose
// opponent changed.
class Runner {
 public:
  Runner(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type, const ProfileSet& set)
      : m_(m), target_(target), true_type_(true_type), set_(set), buffer_(n, Strategy{true_type}) {
    check_arity(m, n);
    if (target >= n) throw std::invalid_argument("target agent out of range");
    if (set.arity + 1 != n) throw std::invalid_argument("family arity does not match n");
  }

  Rational utility(std::size_t p, const Valuation& played) {
    set_.tuple(p, scratch_);
    for (std::size_t j = 0; j < scratch_.size(); ++j) {
      if (last_.size() == scratch_.size() && last_[j] == scratch_[j]) continue;
      buffer_[j < target_ ? j : j + 1] = Strategy{set_.pool[scratch_[j]]};
    }
    last_ = scratch_;
    if (!(buffer_[target_].reported_type == played)) buffer_[target_] = Strategy{played};
    outcome_ = run(m_, buffer_);
    return eval(true_type_, outcome_.allocation.pieces[target_]);
  }

  const Outcome& last_outcome() const { return outcome_; }

 private:
  MechanismId m_;
  AgentId target_;
  const Valuation& true_type_;
  const ProfileSet& set_;
  std::vector<Strategy> buffer_;
  std::vector<std::size_t> scratch_;
  std::vector<std::size_t> last_;
  Outcome outcome_;
};

ScenarioBound grid_bound(const AdversaryFamily& family, std::size_t family_size) {
  ScenarioBound b;
  b.method = BoundMethod::Grid;
  b.h = family.h;
  b.family_size = family_size;
  return b;
}

// Folds observed utilities into a bound, keeping the first witness of each extreme.
struct Extremes {
  std::optional<Rational> lo, hi;
  std::size_t lo_at = 0, hi_at = 0;

  void add(const Rational& u, std::size_t p) {
    if (!lo || u < *lo) lo = u, lo_at = p;
    if (!hi || u > *hi) hi = u, hi_at = p;
  }

  void fill(ScenarioBound& b, const ProfileSet& set) const {
    b.inf = *lo;
    b.sup = *hi;
    b.inf_witness = set.witness(lo_at);
    b.sup_witness = set.witness(hi_at);
  }
};

bool has_analytic_truthful(MechanismId m, std::size_t n) {
  return m == MechanismId::LeftmostLeaves || m == MechanismId::MovingKnife ||
         (m == MechanismId::LeftmostLeavesEvenPaz && n == 2);
}

ScenarioBound analytic_bound(std::size_t n, FormulaTag tag) {
  ScenarioBound b;
  b.inf = Rational(1) / Rational(static_cast<long>(n));
  b.sup = Rational(1);
  b.method = BoundMethod::Analytic;
  b.formula = tag;
  return b;
}

void check_sandwich(const ScenarioBound& grid, const ScenarioBound& analytic) {
  if (grid.inf < analytic.inf || grid.sup > analytic.sup)
    throw std::logic_error("grid bounds [" + to_string(grid.inf) + ", " + to_string(grid.sup) +
                           "] escape analytic bounds [" + to_string(analytic.inf) + ", " + to_string(analytic.sup) +
                           "]");
}

struct TruthfulScan {
  std::vector<Rational> values;
  ScenarioBound grid;
  std::optional<ScenarioBound> analytic;

  const ScenarioBound& reference() const { return analytic ? *analytic : grid; }
};

TruthfulScan scan_truthful(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type,
                           const AdversaryFamily& family, const ProfileSet& set) {
  if (set.size() == 0) throw EmptyFamily("adversary family is empty");
  TruthfulScan out;
  Runner runner(m, target, n, true_type, set);
  Extremes ex;
  out.values.reserve(set.size());
  for (std::size_t p = 0; p < set.size(); ++p) {
    out.values.push_back(runner.utility(p, true_type));
    ex.add(out.values.back(), p);
  }
  out.grid = grid_bound(family, set.size());
  ex.fill(out.grid, set);
  if (has_analytic_truthful(m, n)) {
    out.analytic = analytic_bound(n, FormulaTag::Lemma1);
    check_sandwich(out.grid, *out.analytic);
  }
  return out;
}

ManipulationReport assess_against(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type,
                                  const Candidate& fake, const AdversaryFamily& family, const ProfileSet& set,
                                  const TruthfulScan& truthful) {
  ManipulationReport r{m, target, true_type, fake.type, fake.label, truthful.reference(), {}, {}, false, false};
  Runner runner(m, target, n, true_type, set);
  Extremes ex;
  for (std::size_t p = 0; p < set.size(); ++p) {
    Rational u = runner.utility(p, fake.type);
    if (u > truthful.values[p]) r.profitable = true;
    ex.add(u, p);
  }
  r.manipulated = grid_bound(family, set.size());
  ex.fill(r.manipulated, set);
  r.verdict = render_verdict(r.truthful, r.manipulated, r.profitable);
  r.maximin_violated = r.manipulated.inf > r.truthful.inf;
  return r;
}

Rational margin(const ManipulationReport& r) {
  return max(r.manipulated.sup - r.truthful.sup, r.manipulated.inf - r.truthful.inf);
}

// Restriction of v to [a, 1] scaled by c, with gaps below domain_start filled by zero density.
std::vector<Segment> scaled_tail(const Valuation& v, const Rational& a, const Rational& c) {
  std::vector<Segment> out;
  Rational at = a;
  for (const Segment& s : v.segments()) {
    if (s.end <= a) continue;
    Rational lo = max(s.start, a);
    if (lo > at) out.push_back({at, lo, Rational(0)});
    out.push_back({lo, s.end, s.density * c});
    at = s.end;
  }
  return out;
}

}  // namespace

AdversaryFamily grid_adversaries(const Rational& h, std::vector<Rational> epsilons) {
  AdversaryFamily f;
  f.h = h;
  f.types = families::cell_family(h);
  f.include_clone = true;
  f.epsilons = std::move(epsilons);
  return f;
}

Rational play_utility(MechanismId m, AgentId target, const Valuation& true_type, const Valuation& played,
                      const std::vector<Valuation>& opponents) {
  std::vector<Strategy> s;
  for (const Valuation& v : opponents) s.push_back(Strategy{v});
  if (target > s.size()) throw std::invalid_argument("target agent out of range");
  s.insert(s.begin() + static_cast<std::ptrdiff_t>(target), Strategy{played});
  Outcome out = run(m, s);
  return eval(true_type, out.allocation.pieces[target]);
}

Bounds bounds(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type, const Valuation& played,
              const AdversaryFamily& family) {
  check_arity(m, n);
  ProfileSet set = make_profiles(family, true_type, n - 1);
  if (set.size() == 0) throw EmptyFamily("adversary family is empty");
  Runner runner(m, target, n, true_type, set);
  Extremes ex;
  for (std::size_t p = 0; p < set.size(); ++p) ex.add(runner.utility(p, played), p);
  Bounds b;
  b.grid = grid_bound(family, set.size());
  ex.fill(b.grid, set);
  if (played == true_type && has_analytic_truthful(m, n)) {
    b.analytic = analytic_bound(n, FormulaTag::Lemma1);
    check_sandwich(b.grid, *b.analytic);
  }
  return b;
}

Rational lemma1_value(const Valuation& true_type, const Rational& left, std::size_t remaining) {
  return eval(true_type, left, Rational(1)) / Rational(static_cast<long>(remaining));
}

Rational lemma2_value(const Valuation& true_type, const Rational& left) { return eval(true_type, left, Rational(1)); }

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ObviousViaSup:
      return "ObviousViaSup";
    case Verdict::ObviousViaInf:
      return "ObviousViaInf";
    case Verdict::NotObviousAtResolution:
      return "NotObviousAtResolution";
    case Verdict::Profitable:
      return "Profitable";
    case Verdict::NotProfitable:
      return "NotProfitable";
  }
  return "?";
}

bool is_obvious(Verdict v) { return v == Verdict::ObviousViaSup || v == Verdict::ObviousViaInf; }

Verdict render_verdict(const ScenarioBound& truthful, const ScenarioBound& manipulated, bool profitable,
                       const Rational& tol) {
  if (!profitable) return Verdict::NotProfitable;
  if (manipulated.inf > truthful.inf + tol) return Verdict::ObviousViaInf;
  if (manipulated.sup > truthful.sup + tol) return Verdict::ObviousViaSup;
  return manipulated.method == BoundMethod::Grid && manipulated.h > 0 ? Verdict::NotObviousAtResolution
                                                                       : Verdict::Profitable;
}

std::vector<Candidate> grid_candidates(const Rational& h, const std::vector<Rational>& menu) {
  std::vector<Candidate> out;
  std::vector<Valuation> types = families::bump_family(h, menu);
  for (std::size_t k = 0; k < types.size(); ++k)
    out.push_back({"grid[" + std::to_string(k) + "]", std::move(types[k])});
  return out;
}

ManipulationReport assess_manipulation(MechanismId m, AgentId target, std::size_t n, const Valuation& true_type,
                                       const Candidate& fake, const AdversaryFamily& adversaries) {
  check_arity(m, n);
  ProfileSet set = make_profiles(adversaries, true_type, n - 1);
  TruthfulScan truthful = scan_truthful(m, target, n, true_type, adversaries, set);
  return assess_against(m, target, n, true_type, fake, adversaries, set, truthful);
}

std::optional<ManipulationReport> find_obvious_manipulation(MechanismId m, AgentId target, std::size_t n,
                                                            const Valuation& true_type,
                                                            const std::vector<Candidate>& candidates,
                                                            const AdversaryFamily& adversaries, SearchMode mode) {
  check_arity(m, n);
  ProfileSet set = make_profiles(adversaries, true_type, n - 1);
  TruthfulScan truthful = scan_truthful(m, target, n, true_type, adversaries, set);
  std::optional<ManipulationReport> best;
  for (const Candidate& c : candidates) {
    if (c.type == true_type) continue;
    ManipulationReport r = assess_against(m, target, n, true_type, c, adversaries, set, truthful);
    if (!is_obvious(r.verdict)) continue;
    if (mode == SearchMode::First) return r;
    if (!best || margin(r) > margin(*best)) best = std::move(r);
  }
  return best;
}

NomCertificate certify_nom_leftmost_leaves(std::size_t n, const Valuation& true_type, const Rational& h,
                                           const std::vector<Rational>& menu, AgentId target) {
  const MechanismId m = MechanismId::LeftmostLeaves;
  check_arity(m, n);
  families::check_grid_step(h);
  AdversaryFamily family = grid_adversaries(h, {Rational(1, 100), Rational(1, 1000)});
  ProfileSet set = make_profiles(family, true_type, n - 1);
  TruthfulScan truthful = scan_truthful(m, target, n, true_type, family, set);

  NomCertificate cert;
  cert.n = n;
  cert.h = h;
  cert.adversary_profiles = set.size();
  cert.truthful = truthful.grid;
  cert.analytic = *truthful.analytic;

  // Clone profile first: it holds every fake at or below 1/n.
  std::vector<std::size_t> order;
  if (auto c = set.clone_profile()) order.push_back(*c);
  for (std::size_t p = 0; p < set.size(); ++p)
    if (order.empty() || p != order.front()) order.push_back(p);

  std::vector<Candidate> fakes = grid_candidates(h, menu);
  Runner runner(m, target, n, true_type, set);
  bool first = true;
  for (const Candidate& fake : fakes) {
    if (fake.type == true_type) continue;
    ++cert.fake_types;
    std::optional<Rational> lo, hi;
    for (std::size_t p : order) {
      Rational u = runner.utility(p, fake.type);
      if (!lo || u < *lo) lo = u;
      if (!hi || u > *hi) hi = u;
      if (*lo <= truthful.grid.inf) break;
    }
    if (first || *lo > cert.max_manipulated_inf) cert.max_manipulated_inf = *lo;
    if (first || *hi > cert.max_manipulated_sup) cert.max_manipulated_sup = *hi;
    first = false;
    if (*lo > truthful.grid.inf) {
      ManipulationReport r = assess_against(m, target, n, true_type, fake, family, set, truthful);
      if (is_obvious(r.verdict) && !cert.violation) cert.violation = std::move(r);
    }
  }
  if (first) cert.max_manipulated_inf = cert.max_manipulated_sup = Rational(0);
  cert.passed = !cert.violation && cert.max_manipulated_inf <= cert.analytic.inf &&
                cert.max_manipulated_sup <= cert.analytic.sup;
  cert.scope = "no obvious manipulation among " + std::to_string(cert.fake_types) +
               " single-bump fake types at grid step " + to_string(h) + " against " +
               std::to_string(cert.adversary_profiles) +
               " opponent profiles; the sup side holds because the truthful sup is 1; this is not a proof of "
               "unconditional non-obvious-manipulability";
  return cert;
}

LemmaCheck check_leftmost_leaves_lemmas(std::size_t n, const Valuation& true_type,
                                        const std::vector<Rational>& epsilons, AgentId target) {
  const MechanismId m = MechanismId::LeftmostLeaves;
  check_arity(m, n);
  LemmaCheck out;
  out.n = n;
  out.density_bound = true_type.max_density();
  auto all = [&](const Valuation& v) { return std::vector<Valuation>(n - 1, v); };
  out.worst_case = play_utility(m, target, true_type, true_type, all(true_type));
  out.lemma2_holds = true;
  for (const Rational& eps : epsilons) {
    Rational right = play_utility(m, target, true_type, true_type, all(Valuation::uniform_on(1 - eps, Rational(1))));
    Rational left = play_utility(m, target, true_type, true_type, all(Valuation::uniform_on(Rational(0), eps)));
    out.worst_case = min(out.worst_case, min(left, right));
    out.best_case.emplace_back(eps, left);
    if (left < 1 - out.density_bound * eps) out.lemma2_holds = false;
  }
  out.lemma1_exact = out.worst_case == Rational(1) / Rational(static_cast<long>(n));
  return out;
}

KnifeConditional moving_knife_conditional_sup(const Valuation& true_type, const Rational& eps) {
  KnifeConditional k;
  k.reached_point = cut(true_type, Rational(0), Rational(1, 2));
  k.truthful_value = eval(true_type, Rational(0), k.reached_point);
  k.delayed_stop = 1 - eps;
  k.manipulated_sup = eval(true_type, Rational(0), k.delayed_stop);
  k.verdict = k.manipulated_sup > k.truthful_value ? Verdict::ObviousViaSup : Verdict::NotProfitable;
  return k;
}

ManipulationReport last_diminisher_undercut(const Valuation& true_type, const Rational& first_cut,
                                            const Rational& eps) {
  AdversaryFamily f;
  f.include_clone = false;
  f.explicit_profiles.push_back({"cuts at " + to_string(first_cut), {type_cutting_at(first_cut, Rational(1, 2))}});
  Candidate fake{"undercut to " + to_string(first_cut - eps), type_cutting_at(first_cut - eps, Rational(1, 2))};
  return assess_manipulation(MechanismId::LastDiminisher, 1, 2, true_type, fake, f);
}

Valuation leftmost_share_fake(const Valuation& true_type, const Rational& left, std::size_t n,
                              std::size_t remaining) {
  const Rational tail = eval(true_type, left, Rational(1));
  if (!(tail > 0)) throw std::invalid_argument("no value remains to the right of " + to_string(left));
  const Rational nn(static_cast<long>(n)), rem(static_cast<long>(remaining));
  const Rational c = rem / (nn * tail);
  const Rational leftover = 1 - rem / nn;
  std::vector<Segment> segs;
  if (left > 0) segs.push_back({Rational(0), left, leftover / left});
  else if (leftover != 0) throw std::invalid_argument("no room for leftover mass");
  for (Segment& s : scaled_tail(true_type, left, c)) segs.push_back(std::move(s));
  return Valuation(std::move(segs));
}

ManipulationReport modified_leftmost_leaves_remark(std::size_t n, const Valuation& true_type,
                                                   const Rational& first_cut, const AdversaryFamily& adversaries) {
  const MechanismId m = MechanismId::LeftmostLeavesModified;
  check_arity(m, n);
  if (n < 3) throw ArityError("the conditional scenario needs at least three agents");
  const AgentId target = n - 1;
  const Valuation first = type_cutting_at(first_cut, Rational(1) / Rational(static_cast<long>(n)));
  Candidate fake{"leftmost-leaves share after " + to_string(first_cut),
                 leftmost_share_fake(true_type, first_cut, n, n - 1)};

  ProfileSet set = make_profiles(adversaries, true_type, n - 2);
  if (set.size() == 0) throw EmptyFamily("adversary family is empty");
  // Prepend the fixed first-period winner to every profile.
  ProfileSet full = set;
  full.arity = n - 1;
  full.pool.push_back(first);
  full.labels.push_back("cuts at " + to_string(first_cut));
  const std::size_t first_idx = full.pool.size() - 1;
  full.grid_count = 0;
  full.extra.clear();
  std::vector<std::size_t> t;
  for (std::size_t p = 0; p < set.size(); ++p) {
    set.tuple(p, t);
    t.insert(t.begin(), first_idx);
    full.extra.push_back(t);
  }

  auto conditioned = [&](const Outcome& o) {
    return !o.rounds.empty() && o.rounds.front().winner == 0 && o.rounds.front().winning_cut == first_cut;
  };
  Runner runner(m, target, n, true_type, full);
  Extremes truth, manip;
  bool profitable = false;
  std::size_t kept = 0;
  for (std::size_t p = 0; p < full.size(); ++p) {
    Rational ut = runner.utility(p, true_type);
    if (!conditioned(runner.last_outcome())) continue;
    Rational um = runner.utility(p, fake.type);
    if (!conditioned(runner.last_outcome())) continue;
    ++kept;
    truth.add(ut, p);
    manip.add(um, p);
    profitable = profitable || um > ut;
  }
  if (kept == 0) throw EmptyFamily("no opponent profile lets the first agent win at " + to_string(first_cut));
  ManipulationReport r{m, target, true_type, fake.type, fake.label, grid_bound(adversaries, kept), grid_bound(adversaries, kept),
                       Verdict::NotProfitable, profitable, false};
  truth.fill(r.truthful, full);
  manip.fill(r.manipulated, full);
  r.verdict = render_verdict(r.truthful, r.manipulated, profitable);
  r.maximin_violated = r.manipulated.inf > r.truthful.inf;
  return r;
}

SelfridgeWitness selfridge_conway_om_witness(const Valuation& true_type, const Rational& delta,
                                             const AdversaryFamily& adversaries) {
  if (!(delta > 0) || 3 * delta > 1) throw std::invalid_argument("sliver width must lie in (0, 1/3]");
  const Rational third(1, 3);
  std::vector<Rational> breaks{Rational(0), delta, 2 * delta, Rational(1)};
  std::vector<Rational> dens{third / delta, third / delta, third / (1 - 2 * delta)};
  Candidate fake{"two slivers of width " + to_string(delta), Valuation::from_densities(breaks, dens)};
  AdversaryFamily f = adversaries;
  Valuation sliver_lover = Valuation::uniform_on(Rational(0), 2 * delta);
  f.explicit_profiles.push_back({"slivers", {sliver_lover, sliver_lover}});
  return {assess_manipulation(MechanismId::SelfridgeConway, 0, 3, true_type, fake, f), third, third};
}

NashDirectBounds direct_revelation_bounds_nash(AgentId target, std::size_t n, const Valuation& true_type,
                                               const Valuation& fake_type, const Rational& delta, double tol) {
  const MechanismId m = MechanismId::NashOptimal;
  check_arity(m, n);
  const std::vector<Valuation> clones(n - 1, true_type);
  if (!(delta > 0) || delta > 1) throw std::invalid_argument("sliver width must lie in (0, 1]");
  NashDirectBounds out;
  // Least valuable window [k delta, (k+1) delta]; its value is at most delta when 1/delta is an integer.
  std::optional<Rational> least;
  for (Rational a(0); a + delta <= 1; a += delta) {
    Rational v = eval(true_type, a, a + delta);
    if (!least || v < *least) least = v, out.sliver_start = a;
  }
  const Rational& a = out.sliver_start;
  const std::vector<Valuation> tiny(n - 1, Valuation::uniform_on(a, a + delta));
  out.clone_truthful = play_utility(m, target, true_type, true_type, clones);
  out.clone_manipulated = play_utility(m, target, true_type, fake_type, clones);
  out.tiny_support_truthful = play_utility(m, target, true_type, true_type, tiny);
  const Rational tiny_manipulated = play_utility(m, target, true_type, fake_type, tiny);

  out.truthful = analytic_bound(n, FormulaTag::FullCake);
  out.truthful.inf_witness = {"clone", clones};
  out.truthful.sup_witness = {"uniform[" + to_string(a) + "," + to_string(a + delta) + "]", tiny};
  out.manipulated.method = BoundMethod::Analytic;
  out.manipulated.formula = FormulaTag::Custom;
  out.manipulated.inf = min(out.clone_manipulated, tiny_manipulated);
  out.manipulated.sup = max(out.clone_manipulated, tiny_manipulated);
  out.manipulated.inf_witness = out.clone_manipulated <= tiny_manipulated ? out.truthful.inf_witness
                                                                          : out.truthful.sup_witness;
  out.manipulated.sup_witness = out.clone_manipulated <= tiny_manipulated ? out.truthful.sup_witness
                                                                          : out.truthful.inf_witness;
  const Rational t(tol);
  const bool profitable = out.clone_manipulated > out.clone_truthful + t ||
                          tiny_manipulated > out.tiny_support_truthful + t;
  out.verdict = render_verdict(out.truthful, out.manipulated, profitable, t);
  return out;
}

std::vector<Rational> utilities(const Allocation& alloc, const std::vector<Valuation>& true_types) {
  if (alloc.size() != true_types.size()) throw std::invalid_argument("allocation and type counts differ");
  std::vector<Rational> u;
  for (std::size_t i = 0; i < alloc.size(); ++i) u.push_back(eval(true_types[i], alloc[i]));
  return u;
}

bool check_proportional(const Allocation& alloc, const std::vector<Valuation>& true_types) {
  const Rational share = Rational(1) / Rational(static_cast<long>(true_types.size()));
  for (const Rational& u : utilities(alloc, true_types))
    if (u < share) return false;
  return true;
}

bool check_envy_free(const Allocation& alloc, const std::vector<Valuation>& true_types) {
  if (alloc.size() != true_types.size()) throw std::invalid_argument("allocation and type counts differ");
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    const Rational own = eval(true_types[i], alloc[i]);
    for (std::size_t j = 0; j < alloc.size(); ++j)
      if (j != i && eval(true_types[i], alloc[j]) > own) return false;
  }
  return true;
}

bool check_pareto(const Allocation& alloc, const std::vector<Valuation>& true_types, const Rational& tol) {
  const std::vector<Rational> u = utilities(alloc, true_types);
  std::vector<Rational> breaks{Rational(0), Rational(1)};
  for (const Piece& p : alloc.pieces)
    for (const Interval& iv : p.intervals()) breaks.insert(breaks.end(), {iv.start, iv.end});
  for (const Valuation& v : true_types)
    for (const Segment& s : v.segments()) breaks.insert(breaks.end(), {s.start, s.end});
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const Eigen::Index agents = static_cast<Eigen::Index>(true_types.size());
  const Eigen::Index cells = static_cast<Eigen::Index>(breaks.size()) - 1;
  lp::Matrix<Rational> value(agents, cells);
  for (Eigen::Index i = 0; i < agents; ++i)
    for (Eigen::Index c = 0; c < cells; ++c)
      value(i, c) = eval(true_types[static_cast<std::size_t>(i)], breaks[static_cast<std::size_t>(c)],
                         breaks[static_cast<std::size_t>(c) + 1]);

  // y(i, c) is agent i's share of cell c.
  lp::Problem<Rational> prob(agents * cells);
  auto var = [&](Eigen::Index i, Eigen::Index c) { return i * cells + c; };
  for (Eigen::Index c = 0; c < cells; ++c) {
    lp::Vector<Rational> row = lp::Vector<Rational>::Zero(prob.variables());
    for (Eigen::Index i = 0; i < agents; ++i) row(var(i, c)) = 1;
    prob.add_eq(row, Rational(1));
  }
  Rational total(0);
  for (Eigen::Index i = 0; i < agents; ++i) {
    lp::Vector<Rational> row = lp::Vector<Rational>::Zero(prob.variables());
    for (Eigen::Index c = 0; c < cells; ++c) {
      row(var(i, c)) = value(i, c);
      prob.objective(var(i, c)) = value(i, c);
    }
    prob.add_ge(row, u[static_cast<std::size_t>(i)]);
    total += u[static_cast<std::size_t>(i)];
  }
  lp::Solution<Rational> sol = lp::maximize(prob);
  if (sol.status != lp::Status::Optimal) throw std::logic_error("Pareto LP is not optimal at the current allocation");
  return sol.value - total <= tol;
}

SweepResult proportionality_sweep(MechanismId m, std::size_t n, const std::vector<Valuation>& types) {
  check_arity(m, n);
  SweepResult out;
  if (types.empty()) throw EmptyFamily("type family is empty");
  const std::size_t count = checked_power(types.size(), n);
  const Rational share = Rational(1) / Rational(static_cast<long>(n));
  std::vector<Strategy> s(n, Strategy{types.front()});
  std::vector<std::size_t> digits(n, 0);
  bool first = true;
  for (std::size_t p = 0; p < count; ++p) {
    std::size_t q = p;
    for (std::size_t j = n; j-- > 0;) {
      const std::size_t d = q % types.size();
      q /= types.size();
      if (d != digits[j] || p == 0) s[j] = Strategy{types[d]}, digits[j] = d;
    }
    Outcome o = run(m, s);
    ++out.profiles;
    bool bad = false;
    for (std::size_t i = 0; i < n; ++i) {
      Rational gap = eval(types[digits[i]], o.allocation.pieces[i]) - share;
      if (first || gap < out.min_margin) out.min_margin = gap;
      first = false;
      bad = bad || gap < 0;
    }
    if (bad) {
      if (out.violations++ == 0)
        for (std::size_t i = 0; i < n; ++i) out.witness.push_back(types[digits[i]]);
    }
  }
  return out;
}

}  // namespace cakecut
