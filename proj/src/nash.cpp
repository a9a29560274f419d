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

#include "cakecut/nash.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <set>

namespace cakecut::nash {

std::vector<Rational> CellProfile::utilities() const {
  std::vector<Rational> u(static_cast<std::size_t>(agents()), Rational(0));
  for (Eigen::Index i = 0; i < agents(); ++i)
    for (Eigen::Index c = 0; c < cells(); ++c)
      if (fractions(i, c) != 0) u[static_cast<std::size_t>(i)] += fractions(i, c) * values(i, c);
  return u;
}

CellProfile make_cell_profile(const std::vector<Valuation>& profile) {
  if (profile.empty()) throw DegenerateProfile("no agents");
  std::set<Rational> pts{Rational(0), Rational(1)};
  for (const auto& v : profile)
    for (const auto& s : v.segments()) {
      pts.insert(s.start);
      pts.insert(s.end);
    }
  CellProfile cp;
  cp.breaks.assign(pts.begin(), pts.end());
  const auto n = static_cast<Eigen::Index>(profile.size());
  const auto cells = static_cast<Eigen::Index>(cp.breaks.size()) - 1;
  cp.values = lp::Matrix<Rational>::Zero(n, cells);
  cp.fractions = lp::Matrix<Rational>::Zero(n, cells);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < cells; ++c)
      cp.values(i, c) = eval(profile[static_cast<std::size_t>(i)], cp.breaks[static_cast<std::size_t>(c)],
                             cp.breaks[static_cast<std::size_t>(c) + 1]);
  return cp;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double residual_of(const MatrixXd& v, const MatrixXd& x, const VectorXd& u, double tol) {
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    double best = 0;
    for (Eigen::Index j = 0; j < v.rows(); ++j) best = std::max(best, v(j, c) / u(j));
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (x(i, c) > tol) worst = std::max(worst, best - v(i, c) / u(i));
  }
  return worst;
}

// Recovers exact equilibrium prices from the tight edges of an approximate
// solution and checks the market-equilibrium conditions in exact arithmetic.
std::optional<lp::Matrix<Rational>> snap_exact(const lp::Matrix<Rational>& values, const MatrixXd& v,
                                               const VectorXd& price) {
  const Eigen::Index n = v.rows();
  const Eigen::Index cells = v.cols();
  std::vector<std::vector<Eigen::Index>> agent_edges(static_cast<std::size_t>(n));
  std::vector<std::vector<Eigen::Index>> cell_edges(static_cast<std::size_t>(cells));
  for (Eigen::Index i = 0; i < n; ++i) {
    double mbb = 0;
    for (Eigen::Index c = 0; c < cells; ++c)
      if (v(i, c) > 0 && price(c) > 0) mbb = std::max(mbb, v(i, c) / price(c));
    for (Eigen::Index c = 0; c < cells; ++c)
      if (v(i, c) > 0 && price(c) > 0 && v(i, c) / price(c) >= mbb * (1 - 1e-7)) {
        agent_edges[static_cast<std::size_t>(i)].push_back(c);
        cell_edges[static_cast<std::size_t>(c)].push_back(i);
      }
  }
  std::vector<std::optional<Rational>> alpha(static_cast<std::size_t>(n));
  std::vector<std::optional<Rational>> p(static_cast<std::size_t>(cells));
  for (Eigen::Index root = 0; root < n; ++root) {
    if (alpha[static_cast<std::size_t>(root)]) continue;
    std::vector<Eigen::Index> comp_agents, comp_cells;
    alpha[static_cast<std::size_t>(root)] = Rational(1);
    std::queue<std::pair<bool, Eigen::Index>> todo;  // (is_agent, id)
    todo.push({true, root});
    while (!todo.empty()) {
      auto [is_agent, id] = todo.front();
      todo.pop();
      if (is_agent) {
        comp_agents.push_back(id);
        for (Eigen::Index c : agent_edges[static_cast<std::size_t>(id)]) {
          Rational pc = values(id, c) / *alpha[static_cast<std::size_t>(id)];
          auto& slot = p[static_cast<std::size_t>(c)];
          if (!slot) {
            slot = pc;
            todo.push({false, c});
          } else if (*slot != pc) {
            return std::nullopt;
          }
        }
      } else {
        comp_cells.push_back(id);
        for (Eigen::Index j : cell_edges[static_cast<std::size_t>(id)]) {
          Rational aj = values(j, id) / *p[static_cast<std::size_t>(id)];
          auto& slot = alpha[static_cast<std::size_t>(j)];
          if (!slot) {
            slot = aj;
            todo.push({true, j});
          } else if (*slot != aj) {
            return std::nullopt;
          }
        }
      }
    }
    // each agent brings budget 1; all of it is spent inside the component
    Rational sum(0);
    for (Eigen::Index c : comp_cells) sum += *p[static_cast<std::size_t>(c)];
    if (sum == 0) return std::nullopt;
    Rational k = Rational(static_cast<long>(comp_agents.size())) / sum;
    for (Eigen::Index c : comp_cells) *p[static_cast<std::size_t>(c)] *= k;
    for (Eigen::Index i : comp_agents) *alpha[static_cast<std::size_t>(i)] /= k;
  }
  for (Eigen::Index c = 0; c < cells; ++c) {
    bool valued = false;
    for (Eigen::Index i = 0; i < n; ++i) valued = valued || values(i, c) > 0;
    if (valued && !p[static_cast<std::size_t>(c)]) return std::nullopt;
  }
  // exact maximum bang-per-buck
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < cells; ++c) {
      const auto& pc = p[static_cast<std::size_t>(c)];
      if (!pc) continue;
      if (values(i, c) > *alpha[static_cast<std::size_t>(i)] * *pc) return std::nullopt;
    }
  // spending: each agent spends 1 on tight cells, each cell collects its price
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c : agent_edges[static_cast<std::size_t>(i)]) edges.push_back({i, c});
  const auto m = static_cast<Eigen::Index>(edges.size());
  lp::Problem<Rational> flow(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    lp::Vector<Rational> row = lp::Vector<Rational>::Zero(m);
    for (Eigen::Index e = 0; e < m; ++e)
      if (edges[static_cast<std::size_t>(e)].first == i) row(e) = 1;
    flow.add_eq(row, Rational(1));
  }
  for (Eigen::Index c = 0; c < cells; ++c) {
    if (!p[static_cast<std::size_t>(c)]) continue;
    lp::Vector<Rational> row = lp::Vector<Rational>::Zero(m);
    for (Eigen::Index e = 0; e < m; ++e)
      if (edges[static_cast<std::size_t>(e)].second == c) row(e) = 1;
    flow.add_eq(row, *p[static_cast<std::size_t>(c)]);
  }
  auto sol = lp::maximize(flow);
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  lp::Matrix<Rational> f = lp::Matrix<Rational>::Zero(n, cells);
  for (Eigen::Index e = 0; e < m; ++e) {
    auto [i, c] = edges[static_cast<std::size_t>(e)];
    f(i, c) = sol.x(e) / *p[static_cast<std::size_t>(c)];
  }
  for (Eigen::Index c = 0; c < cells; ++c)
    if (!p[static_cast<std::size_t>(c)]) f(0, c) = 1;  // worthless to everyone
  return f;
}

}  // namespace

CellProfile solve_nash(const std::vector<Valuation>& profile, const Options& options) {
  return solve_nash(make_cell_profile(profile), options);
}

CellProfile solve_nash(CellProfile cp, const Options& options) {
  const Eigen::Index n = cp.agents();
  const Eigen::Index cells = cp.cells();
  if (options.tol <= 0) throw std::invalid_argument("tolerance must be positive");
  MatrixXd v(n, cells);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index c = 0; c < cells; ++c) v(i, c) = to_double(cp.values(i, c));
  const VectorXd row_total = v.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(row_total(i) > 0)) throw DegenerateProfile("agent " + std::to_string(i) + " values nothing");

  MatrixXd bids = v.array().colwise() / row_total.array();
  MatrixXd x(n, cells);
  VectorXd u(n);
  VectorXd price(cells);
  double residual = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= options.max_iterations; ++it) {
    price = bids.colwise().sum().transpose();
    for (Eigen::Index c = 0; c < cells; ++c)
      for (Eigen::Index i = 0; i < n; ++i) x(i, c) = price(c) > 0 ? bids(i, c) / price(c) : 0.0;
    u = v.cwiseProduct(x).rowwise().sum();
    residual = residual_of(v, x, u, options.tol);
    const bool certified = residual <= options.tol;
    if (certified || it % options.snap_every == 0) {
      if (auto f = snap_exact(cp.values, v, price)) {
        cp.fractions = std::move(*f);
        cp.exact = true;
        cp.residual = 0;
        cp.iterations = it;
        return cp;
      }
    }
    if (certified) {
      for (Eigen::Index c = 0; c < cells; ++c) {
        // exact column sums: the largest share absorbs the rounding
        Eigen::Index big = 0;
        Rational rest(1);
        for (Eigen::Index i = 0; i < n; ++i) {
          if (x(i, c) > x(big, c)) big = i;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          cp.fractions(i, c) = i == big ? Rational(0) : Rational(x(i, c));
          rest -= cp.fractions(i, c);
        }
        cp.fractions(big, c) = rest;
      }
      cp.exact = false;
      cp.residual = residual;
      cp.iterations = it;
      return cp;
    }
    MatrixXd fresh = v.cwiseProduct(x).array().colwise() / u.array();
    bids = (1 - options.damping) * bids + options.damping * fresh;
  }
  throw NonConvergence("proportional response did not certify within the iteration cap", residual);
}

double bang_per_buck_residual(const CellProfile& cp, double tol) {
  MatrixXd v(cp.agents(), cp.cells()), x(cp.agents(), cp.cells());
  for (Eigen::Index i = 0; i < cp.agents(); ++i)
    for (Eigen::Index c = 0; c < cp.cells(); ++c) {
      v(i, c) = to_double(cp.values(i, c));
      x(i, c) = to_double(cp.fractions(i, c));
    }
  VectorXd u = v.cwiseProduct(x).rowwise().sum();
  return residual_of(v, x, u, tol);
}

Allocation materialize(const CellProfile& cp) {
  Allocation alloc;
  alloc.pieces.resize(static_cast<std::size_t>(cp.agents()));
  for (Eigen::Index c = 0; c < cp.cells(); ++c) {
    const Rational& a = cp.breaks[static_cast<std::size_t>(c)];
    const Rational len = cp.breaks[static_cast<std::size_t>(c) + 1] - a;
    Rational at = a;
    Rational acc(0);
    for (Eigen::Index i = 0; i < cp.agents(); ++i) {
      if (cp.fractions(i, c) == 0) continue;
      acc += cp.fractions(i, c);
      Rational next = a + len * acc;
      alloc.pieces[static_cast<std::size_t>(i)].append(at, next);
      at = next;
    }
  }
  return alloc;
}

}  // namespace cakecut::nash
