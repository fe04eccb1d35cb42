#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "crn/linalg.hpp"

namespace crn::lp {

template <class Scalar>
struct Tolerance;

template <>
struct Tolerance<double> {
  static bool positive(double v) { return v > 1e-11; }
  static bool negative(double v) { return v < -1e-11; }
};

template <>
struct Tolerance<linalg::Rational> {
  static bool positive(const linalg::Rational& v) { return v.numerator() > 0; }
  static bool negative(const linalg::Rational& v) { return v.numerator() < 0; }
};

// maximize c^T y  subject to  A y = b, y >= 0
template <class Scalar>
struct Problem {
  std::vector<std::vector<Scalar>> A;
  std::vector<Scalar> b;
  std::vector<Scalar> c;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

template <class Scalar>
struct Result {
  Status status = Status::Infeasible;
  std::vector<Scalar> y;
  Scalar objective = Scalar(0);
};

namespace detail {

template <class Scalar>
struct Tableau {
  std::vector<std::vector<Scalar>> t;  // m constraint rows + objective row; last column rhs
  std::vector<std::size_t> basis;
  std::size_t width = 0;               // number of variable columns

  void pivot(std::size_t row, std::size_t col) {
    const Scalar inv = Scalar(1) / t[row][col];
    for (auto& e : t[row]) e *= inv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == row) continue;
      const Scalar f = t[i][col];
      if (f == Scalar(0)) continue;
      for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule on columns < allowed. Objective row holds reduced costs (enter if > 0).
  Status run(std::size_t allowed, int max_iter) {
    using Tol = Tolerance<Scalar>;
    const std::size_t m = basis.size();
    for (int it = 0; it < max_iter; ++it) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j)
        if (Tol::positive(t[m][j])) {
          enter = j;
          break;
        }
      if (enter == allowed) return Status::Optimal;
      std::size_t leave = m;
      Scalar best = Scalar(0);
      for (std::size_t i = 0; i < m; ++i) {
        if (!Tol::positive(t[i][enter])) continue;
        const Scalar ratio = t[i][width] / t[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }

  void set_objective(const std::vector<Scalar>& cost) {
    const std::size_t m = basis.size();
    for (std::size_t j = 0; j <= width; ++j) {
      Scalar v = j < cost.size() ? cost[j] : Scalar(0);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = basis[i];
        const Scalar cb = bj < cost.size() ? cost[bj] : Scalar(0);
        v -= cb * t[i][j];
      }
      t[m][j] = v;
    }
  }
};

}  // namespace detail

template <class Scalar>
Result<Scalar> maximize(const Problem<Scalar>& p, int max_iter = 20000) {
  using Tol = Tolerance<Scalar>;
  const std::size_t m = p.A.size();
  const std::size_t nv = p.c.size();
  detail::Tableau<Scalar> tab;
  tab.width = nv + m;
  tab.t.assign(m + 1, std::vector<Scalar>(tab.width + 1, Scalar(0)));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar s = p.b[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
    for (std::size_t j = 0; j < nv; ++j) tab.t[i][j] = s * p.A[i][j];
    tab.t[i][nv + i] = Scalar(1);
    tab.t[i][tab.width] = s * p.b[i];
    tab.basis[i] = nv + i;
  }
  std::vector<Scalar> phase1(tab.width, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) phase1[nv + i] = Scalar(-1);
  tab.set_objective(phase1);
  Result<Scalar> res;
  Status st = tab.run(tab.width, max_iter);
  if (st == Status::IterationLimit) {
    res.status = st;
    return res;
  }
  if (Tol::positive(tab.t[m][tab.width])) {  // leftover artificial mass
    res.status = Status::Infeasible;
    return res;
  }
  // drive artificials out of the basis; drop redundant rows
  for (std::size_t i = 0; i < tab.basis.size();) {
    if (tab.basis[i] < nv) {
      ++i;
      continue;
    }
    std::size_t col = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (Tol::positive(tab.t[i][j]) || Tol::negative(tab.t[i][j])) {
        col = j;
        break;
      }
    if (col < nv) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  tab.set_objective(p.c);
  st = tab.run(nv, max_iter);
  res.status = st;
  if (st != Status::Optimal) return res;
  res.y.assign(nv, Scalar(0));
  for (std::size_t i = 0; i < tab.basis.size(); ++i)
    if (tab.basis[i] < nv) res.y[tab.basis[i]] = tab.t[i][tab.width];
  res.objective = Scalar(0);
  for (std::size_t j = 0; j < nv; ++j) res.objective += p.c[j] * res.y[j];
  return res;
}

}  // namespace crn::lp
