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

// Acceptance suite: one PASS/FAIL line per criterion.

#include "support.hpp"

#include "cakecut/families.hpp"
#include "cakecut/reproduce.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace cakecut;

namespace {

using Clock = std::chrono::steady_clock;

Rational r(long p, long q = 1) { return make_rational(p, q); }

FamilySpec defaults() { return {r(1, 20), families::default_menu()}; }

struct Result {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Result classical_mechanisms() {
  Result res;
  auto t0 = Clock::now();
  Reproduction rep = reproduce("theorem1", defaults());
  for (const Check& c : rep.checks) res.require(c.passed, c.claim + " (" + c.detail + ")");
  // The manipulated sup of cut-middle climbs toward 1 as the grid refines.
  Rational previous(0);
  for (long cells : {10L, 20L, 40L}) {
    const Rational h = r(1, cells);
    auto m = find_obvious_manipulation(MechanismId::CutMiddle, 0, 2, testing::blue(),
                                       grid_candidates(h, families::default_menu()), grid_adversaries(h),
                                       SearchMode::Best);
    res.require(m && m->manipulated.sup >= 1 - 10 * h, "cut-middle sup >= 1 - 10h at h = " + to_string(h));
    res.require(m && m->manipulated.sup >= previous, "cut-middle sup non-decreasing under refinement");
    if (m) previous = m->manipulated.sup;
  }
  const double secs = seconds_since(t0);
  res.require(secs < 10, "runtime under 10 s");
  res.note << "cut-middle sup at h=1/40: " << to_string(previous) << "; " << secs << " s";
  return res;
}

Result leftmost_leaves_certificates() {
  Result res;
  auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const auto menu = families::default_menu();
  std::size_t certs = 0, obvious = 0;
  for (std::size_t n : {2u, 3u, 4u})
    for (int k = 0; k < 50; ++k) {
      const Valuation v = families::random_grid_type(rng, r(1, 20), menu);
      NomCertificate c = certify_nom_leftmost_leaves(n, v, r(1, 20), menu);
      ++certs;
      if (c.violation) ++obvious;
      res.require(c.passed, "certificate n=" + std::to_string(n));
      LemmaCheck l = check_leftmost_leaves_lemmas(n, v, {r(1, 100), r(1, 1000)});
      res.require(l.worst_case == Rational(1) / Rational(static_cast<long>(n)), "worst case equals 1/n exactly");
      res.require(l.lemma2_holds, "best case >= 1 - c*eps");
    }
  const double secs = seconds_since(t0);
  res.require(secs < 300, "runtime under 5 min");
  res.note << certs << " certificates, " << obvious << " obvious verdicts; " << secs << " s";
  return res;
}

Result proportionality() {
  Result res;
  auto t0 = Clock::now();
  const auto types = families::cell_family(r(1, 20));
  std::size_t profiles = 0, violations = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    SweepResult s = proportionality_sweep(MechanismId::LeftmostLeaves, n, types);
    profiles += s.profiles;
    violations += s.violations;
    res.require(s.violations == 0 && s.min_margin >= 0, "no violation at n=" + std::to_string(n));
  }
  res.note << profiles << " profiles, " << violations << " violations; " << seconds_since(t0) << " s";
  return res;
}

Result modified_leftmost_leaves() {
  Result res;
  Reproduction rep = reproduce("remark", defaults());
  for (const Check& c : rep.checks) res.require(c.passed, c.claim);
  const auto& m = rep.results["modified-leftmost-leaves"];
  res.require(m["truthful"]["inf"]["exact"] == "1/5", "truthful worst case 1/5");
  res.require(m["manipulated"]["inf"]["exact"] == "9/40", "manipulated worst case 9/40");
  res.require(m["verdict"] == "ObviousViaInf", "verdict ObviousViaInf");
  res.note << "inf " << m["truthful"]["inf"]["exact"].get<std::string>() << " -> "
           << m["manipulated"]["inf"]["exact"].get<std::string>();
  return res;
}

Result nash_optimal() {
  Result res;
  auto t0 = Clock::now();
  const double tol = 1e-9;
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> cells_dist(1, 6), agents_dist(2, 3);
  const std::vector<Candidate> fakes = grid_candidates(r(1, 4), families::default_menu());
  std::size_t obvious = 0, sweeps = 0;
  Rational worst_gap(-1);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = static_cast<std::size_t>(agents_dist(rng));
    std::vector<Valuation> t = testing::random_profile_on_cells(rng, n, cells_dist(rng));
    // Keep the target uniform on every tenth instance.
    if (k % 10 == 0) t[0] = Valuation::uniform();
    nash::CellProfile cp = nash::solve_nash(t);
    res.require(nash::bang_per_buck_residual(cp, tol) <= tol, "bang-per-buck certificate");
    Allocation a = nash::materialize(cp);
    const std::vector<Rational> u = utilities(a, t);
    for (std::size_t i = 0; i < n; ++i) {
      res.require(to_double(u[i]) >= 1.0 / double(n) - tol, "proportional");
      for (std::size_t j = 0; j < n; ++j)
        res.require(to_double(u[i]) >= to_double(eval(t[i], a.pieces[j])) - tol, "envy-free");
    }
    res.require(check_pareto(a, t, Rational(tol)), "exact LP dominance check");
    for (const Candidate& c : fakes) {
      NashDirectBounds b = direct_revelation_bounds_nash(0, n, t[0], c.type, r(1, 100), tol);
      ++sweeps;
      const Rational gap = b.clone_manipulated - Rational(1) / Rational(static_cast<long>(n));
      if (gap > worst_gap) worst_gap = gap;
      res.require(to_double(gap) <= tol, "clone profile caps manipulation at 1/n");
      res.require(b.tiny_support_truthful >= r(99, 100), "tiny support leaves >= 0.99");
      if (is_obvious(b.verdict)) ++obvious;
    }
  }
  res.require(obvious == 0, "no obvious verdict in the grid sweep");
  const double secs = seconds_since(t0);
  res.require(secs < 300, "runtime under 5 min");
  res.note << sweeps << " manipulations, " << obvious << " obvious, max clone excess " << to_double(worst_gap) << "; "
           << secs << " s";
  return res;
}

Result brute_force() {
  Result res;
  std::mt19937_64 rng(606);
  double worst = 1;
  for (int k = 0; k < 20; ++k) {
    // Two agents on up to three cells, or three agents on up to two cells.
    const std::size_t n = k % 2 == 0 ? 2 : 3;
    const int cells = n == 2 ? 1 + k / 2 % 3 : 1 + k / 2 % 2;
    std::vector<Valuation> t = testing::random_profile_on_cells(rng, n, cells);
    nash::CellProfile cp = nash::solve_nash(t);
    std::vector<std::vector<double>> v(n);
    for (std::size_t i = 0; i < n; ++i)
      for (Eigen::Index c = 0; c < cp.cells(); ++c) v[i].push_back(to_double(cp.values(static_cast<Eigen::Index>(i), c)));
    double solver = 1;
    for (const Rational& x : cp.utilities()) solver *= to_double(x);
    const double grid = testing::brute_force_nash_product(v, 200);
    worst = std::min(worst, solver - grid);
    res.require(solver >= grid - 1e-6, "solver product >= grid product - 1e-6");
  }
  res.note << "min(solver - grid) = " << worst;
  return res;
}

Result equivalences() {
  Result res;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> n_dist(2, 5);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = static_cast<std::size_t>(n_dist(rng));
    std::vector<Valuation> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(testing::random_valuation(rng));
    res.require(run_moving_knife(testing::truthful(t)).allocation == run_leftmost_leaves(testing::truthful(t)).allocation,
                "moving knife equals leftmost leaves");
  }
  for (int k = 0; k < 100; ++k) {
    std::vector<Valuation> t{testing::random_valuation(rng), testing::random_valuation(rng)};
    res.require(run_leftmost_leaves_even_paz(testing::truthful(t)).allocation ==
                    run_leftmost_leaves(testing::truthful(t)).allocation,
                "Even-Paz equals leftmost leaves for n=2");
  }
  res.note << "300 profiles";
  return res;
}

Result selfridge() {
  Result res;
  std::mt19937_64 rng(808);
  for (int k = 0; k < 50; ++k) {
    std::vector<Valuation> t;
    for (int i = 0; i < 3; ++i) t.push_back(testing::random_valuation(rng));
    Outcome o = run_selfridge_conway(testing::truthful(t));
    res.require(check_envy_free(o.allocation, t), "truthful run envy-free");
  }
  Reproduction rep = reproduce("selfridge", defaults());
  for (const Check& c : rep.checks) res.require(c.passed, c.claim);
  const auto& m = rep.results["selfridge-conway"];
  res.note << "truthful sup " << m["truthful"]["sup"]["exact"].get<std::string>() << ", manipulated sup "
           << m["manipulated"]["sup"]["exact"].get<std::string>();
  return res;
}

Result properties() {
  Result res;
  std::mt19937_64 rng(909);
  for (int k = 0; k < 1000; ++k) {
    const Valuation v = testing::random_valuation(rng, 8, 120);
    Rational a = testing::random_point(rng, 240), b = testing::random_point(rng, 240), c = testing::random_point(rng, 240);
    if (b < a) std::swap(a, b);
    if (c < b) std::swap(b, c);
    if (b < a) std::swap(a, b);
    res.require(eval(v, a, b) + eval(v, b, c) == eval(v, a, c), "additivity");
    Piece p;
    p.append(a, b);
    p.append(c, Rational(1));
    res.require(eval(v, p) == eval(v, a, b) + eval(v, c, Rational(1)), "additivity over pieces");
    const Rational rest = eval(v, a, Rational(1));
    const Rational al1 = rest * testing::random_point(rng, 50), al2 = rest * testing::random_point(rng, 50);
    const Rational y1 = cut(v, a, al1), y2 = cut(v, a, al2);
    res.require(eval(v, a, y1) == al1, "cut/eval round trip");
    res.require((al1 <= al2) == (y1 <= y2) || al1 == al2 || y1 == y2, "monotonicity");
    if (al1 <= al2) res.require(y1 <= y2, "monotonicity");
    if (y1 > a) {
      const Rational below = y1 - (y1 - a) / 1000;
      res.require(eval(v, a, below) < al1, "minimality");
    }
  }
  // Consistency of traces produced by every query-based mechanism, truthful and manipulated.
  std::size_t traces = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 3);
    std::vector<Strategy> s;
    for (std::size_t i = 0; i < n; ++i) s.push_back(Strategy{testing::random_valuation(rng)});
    for (MechanismId m : all_mechanisms()) {
      if (m == MechanismId::NashOptimal) continue;
      if ((m == MechanismId::CutAndChoose || m == MechanismId::CutMiddle) && n != 2) continue;
      if (m == MechanismId::SelfridgeConway && n != 3) continue;
      Outcome o = run(m, s);
      ++traces;
      res.require(check_consistency(o.trace), "mechanism trace consistent");
    }
  }
  auto eval_then_cut = [](const Rational& y) {
    return QueryTrace::from_entries({{EvalQuery{0, r(3, 10), r(1)}, r(0)}, {CutQuery{0, r(0), r(1, 2)}, y}});
  };
  res.require(check_consistency(eval_then_cut(r(1, 5))), "trace with answer inside [0, 0.3) accepted");
  res.require(!check_consistency(eval_then_cut(r(2, 5))), "inconsistent eval-then-cut trace rejected");
  res.note << "1000 valuations, " << traces << " traces";
  return res;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1 obvious manipulability of the four classical mechanisms", classical_mechanisms},
      {"2 leftmost leaves certificate and worst/best-case checks", leftmost_leaves_certificates},
      {"3 leftmost leaves proportionality over the grid family", proportionality},
      {"4 modified leftmost leaves worst-case manipulation", modified_leftmost_leaves},
      {"5 Nash-optimal fairness, Pareto and manipulation sweep", nash_optimal},
      {"6 Nash solver against brute force", brute_force},
      {"7 moving knife and Even-Paz equivalences", equivalences},
      {"8 Selfridge-Conway envy-freeness and manipulation", selfridge},
      {"9 valuation and consistency property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.ok = false;
      r.note << "exception: " << e.what();
    }
    std::cout << (r.ok ? "PASS" : "FAIL") << "  criterion " << name << "  [" << r.note.str() << "]" << std::endl;
    failed += r.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
