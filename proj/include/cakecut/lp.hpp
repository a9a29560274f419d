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

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace cakecut::lp {

enum class Status { Optimal, Infeasible, Unbounded };

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// maximize objective·x  subject to  eq_lhs x = eq_rhs,  le_lhs x <= le_rhs,  x >= 0.
template <class Scalar>
struct Problem {
  Vector<Scalar> objective;
  Matrix<Scalar> eq_lhs;
  Vector<Scalar> eq_rhs;
  Matrix<Scalar> le_lhs;
  Vector<Scalar> le_rhs;

  explicit Problem(Eigen::Index variables)
      : objective(Vector<Scalar>::Zero(variables)),
        eq_lhs(0, variables),
        eq_rhs(0),
        le_lhs(0, variables),
        le_rhs(0) {}

  Eigen::Index variables() const { return objective.size(); }

  void add_eq(const Vector<Scalar>& row, const Scalar& rhs) { append(eq_lhs, eq_rhs, row, rhs); }
  void add_le(const Vector<Scalar>& row, const Scalar& rhs) { append(le_lhs, le_rhs, row, rhs); }
  void add_ge(const Vector<Scalar>& row, const Scalar& rhs) { append(le_lhs, le_rhs, Vector<Scalar>(-row), Scalar(-rhs)); }

 private:
  static void append(Matrix<Scalar>& lhs, Vector<Scalar>& rhs, const Vector<Scalar>& row, const Scalar& b) {
    lhs.conservativeResize(lhs.rows() + 1, Eigen::NoChange);
    lhs.row(lhs.rows() - 1) = row.transpose();
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = b;
  }
};

template <class Scalar>
struct Solution {
  Status status = Status::Infeasible;
  Scalar value{0};
  Vector<Scalar> x;
};

/// Dense two-phase simplex with Bland's rule. Exact when Scalar is exact.
template <class Scalar>
Solution<Scalar> maximize(const Problem<Scalar>& problem);

namespace detail {

template <class Scalar>
class Tableau {
 public:
  Tableau(Matrix<Scalar> t, std::vector<Eigen::Index> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  // Last row holds reduced costs of the maximization objective, last column the rhs.
  // Returns false if unbounded.
  bool run(Eigen::Index usable_columns) {
    const Eigen::Index rows = t_.rows() - 1;
    const Eigen::Index rhs = t_.cols() - 1;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < usable_columns; ++j)
        if (t_(rows, j) > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best{0};
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (!(t_(r, enter) > 0)) continue;
        Scalar ratio = t_(r, rhs) / t_(r, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    Scalar p = t_(r, c);
    for (Eigen::Index j = 0; j < t_.cols(); ++j)
      if (t_(r, j) != 0) t_(r, j) /= p;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Scalar f = t_(i, c);
      for (Eigen::Index j = 0; j < t_.cols(); ++j)
        if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  Matrix<Scalar>& table() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

 private:
  Matrix<Scalar> t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

template <class Scalar>
Solution<Scalar> maximize(const Problem<Scalar>& problem) {
  const Eigen::Index n = problem.variables();
  const Eigen::Index m_eq = problem.eq_lhs.rows();
  const Eigen::Index m_le = problem.le_lhs.rows();
  const Eigen::Index m = m_eq + m_le;
  // columns: x | slacks | artificials | rhs
  const Eigen::Index art0 = n + m_le;
  const Eigen::Index cols = art0 + m + 1;
  Matrix<Scalar> t = Matrix<Scalar>::Zero(m + 1, cols);
  for (Eigen::Index r = 0; r < m; ++r) {
    const bool is_eq = r < m_eq;
    const Eigen::Index src = is_eq ? r : r - m_eq;
    Scalar b = is_eq ? problem.eq_rhs(src) : problem.le_rhs(src);
    Scalar sign = b < 0 ? Scalar(-1) : Scalar(1);
    for (Eigen::Index j = 0; j < n; ++j) t(r, j) = sign * (is_eq ? problem.eq_lhs(src, j) : problem.le_lhs(src, j));
    if (!is_eq) t(r, n + src) = sign;
    t(r, art0 + r) = Scalar(1);
    t(r, cols - 1) = sign * b;
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = art0 + r;
  // phase 1: maximize -sum(artificials); reduced costs = column sums over rows
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (j >= art0 && j < cols - 1) continue;
    Scalar s{0};
    for (Eigen::Index r = 0; r < m; ++r) s += t(r, j);
    t(m, j) = s;
  }
  detail::Tableau<Scalar> tab(std::move(t), std::move(basis));
  tab.run(art0);
  Solution<Scalar> out;
  if (tab.table()(m, cols - 1) != 0) {
    out.status = Status::Infeasible;
    return out;
  }
  // drive remaining artificials out of the basis
  for (Eigen::Index r = 0; r < m; ++r) {
    if (tab.basis()[static_cast<std::size_t>(r)] < art0) continue;
    for (Eigen::Index j = 0; j < art0; ++j)
      if (tab.table()(r, j) != 0) {
        tab.pivot(r, j);
        break;
      }
  }
  // phase 2 objective row
  Matrix<Scalar>& tt = tab.table();
  for (Eigen::Index j = 0; j < cols; ++j) tt(m, j) = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) tt(m, j) = problem.objective(j);
  for (Eigen::Index r = 0; r < m; ++r) {
    Eigen::Index b = tab.basis()[static_cast<std::size_t>(r)];
    if (b >= art0) continue;  // redundant row, artificial stuck at zero
    Scalar c = tt(m, b);
    if (c == 0) continue;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (tt(r, j) != 0) tt(m, j) -= c * tt(r, j);
  }
  if (!tab.run(art0)) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.x = Vector<Scalar>::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r) {
    Eigen::Index b = tab.basis()[static_cast<std::size_t>(r)];
    if (b < n) out.x(b) = tt(r, cols - 1);
  }
  out.value = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) out.value += problem.objective(j) * out.x(j);
  return out;
}

}  // namespace cakecut::lp
