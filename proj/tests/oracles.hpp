// Test-only reference implementations. Nothing here shares code with the
// simplex or the planner.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "anticipate/lp_solver.hpp"

namespace oracle {

struct VertexResult {
  bool feasible = false;
  double best = std::numeric_limits<double>::infinity();
  std::size_t vertices = 0;
};

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;

/// Minimum of c.x over every basic feasible solution, found by solving each
/// n x n system of (all equalities + a choice of tight inequalities). Only
/// valid for bounded feasible regions with n <= 8.
inline VertexResult enumerate_vertices(const anticipate::LpProblem& lp, double tol = 1e-9) {
  const std::size_t n = lp.num_vars();
  // Inequalities g.x <= h: explicit rows, x >= 0, finite upper bounds.
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (std::size_t i = 0; i < lp.ub_matrix.rows(); ++i) {
    g.emplace_back(lp.ub_matrix.row(i).begin(), lp.ub_matrix.row(i).end());
    h.push_back(lp.ub_rhs[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = -1.0;
    g.push_back(row);
    h.push_back(0.0);
    if (!lp.var_upper_bounds.empty() && std::isfinite(lp.var_upper_bounds[j])) {
      row[j] = 1.0;
      g.push_back(row);
      h.push_back(lp.var_upper_bounds[j]);
    }
  }
  // Keep a linearly independent subset of the equalities; a dependent row
  // that contradicts the others makes the problem infeasible.
  VertexResult result;
  std::vector<std::size_t> eq_rows;
  for (std::size_t i = 0; i < lp.eq_matrix.rows(); ++i) {
    const std::size_t k = eq_rows.size() + 1;
    Eigen::MatrixXd a(k, n), ab(k, n + 1);
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t src = r + 1 < k ? eq_rows[r] : i;
      for (std::size_t j = 0; j < n; ++j) ab(r, j) = a(r, j) = lp.eq_matrix(src, j);
      ab(r, n) = lp.eq_rhs[src];
    }
    const auto rank = Eigen::FullPivLU<Eigen::MatrixXd>(a).rank();
    if (rank == static_cast<Eigen::Index>(k)) {
      eq_rows.push_back(i);
    } else if (Eigen::FullPivLU<Eigen::MatrixXd>(ab).rank() > rank) {
      return result;
    }
  }
  const std::size_t m_eq = eq_rows.size();
  if (m_eq > n) return result;
  const std::size_t pick = n - m_eq;

  std::vector<bool> mask(g.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(pick, g.size())), true);
  if (pick > g.size()) return result;
  do {
    SmallMatrix a(n, n);
    SmallVector b(n);
    std::size_t r = 0;
    for (std::size_t i : eq_rows) {
      for (std::size_t j = 0; j < n; ++j) a(r, j) = lp.eq_matrix(i, j);
      b(r) = lp.eq_rhs[i];
      ++r;
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!mask[k]) continue;
      for (std::size_t j = 0; j < n; ++j) a(r, j) = g[k][j];
      b(r) = h[k];
      ++r;
    }
    Eigen::FullPivLU<SmallMatrix> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(n)) continue;
    const SmallVector x = lu.solve(b);

    bool ok = true;
    for (std::size_t i = 0; i < lp.eq_matrix.rows() && ok; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += lp.eq_matrix(i, j) * x(j);
      ok = std::abs(lhs - lp.eq_rhs[i]) <= tol * std::max(1.0, std::abs(lp.eq_rhs[i]));
    }
    for (std::size_t k = 0; k < g.size() && ok; ++k) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += g[k][j] * x(j);
      ok = lhs <= h[k] + tol * std::max(1.0, std::abs(h[k]));
    }
    if (!ok) continue;
    ++result.vertices;
    result.feasible = true;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * x(j);
    result.best = std::min(result.best, value);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return result;
}

/// Random LP with <= 6 variables and <= 4 explicit constraints whose feasible
/// region is non-empty (it contains a planted point) and bounded (every
/// variable has a finite bound or appears in a positive bounding row).
inline anticipate::LpProblem random_bounded_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nvars(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<std::size_t>(nvars(rng));
  const bool integral = unit(rng) < 0.4;  // integer data breeds degenerate vertices
  auto coef = [&](double lo, double hi) {
    const double v = lo + (hi - lo) * unit(rng);
    return integral ? std::round(v) : v;
  };

  anticipate::LpProblem lp;
  lp.objective.resize(n);
  for (auto& c : lp.objective) c = coef(-5, 5);

  lp.var_upper_bounds.assign(n, anticipate::kInfinity);
  bool any_free = false;
  std::vector<double> planted(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (unit(rng) < 0.7) {
      lp.var_upper_bounds[j] = std::max(coef(0.5, 10), 1.0);
      planted[j] = lp.var_upper_bounds[j] * unit(rng);
    } else {
      any_free = true;
      planted[j] = 5.0 * unit(rng);
    }
  }
  if (integral) {
    for (std::size_t j = 0; j < n; ++j) {
      planted[j] = std::floor(planted[j]);
    }
  }

  const std::size_t budget = any_free ? 3 : 4;
  std::uniform_int_distribution<std::size_t> eq_count(0, std::min<std::size_t>(2, n - 1));
  const std::size_t m_eq = std::min(eq_count(rng), budget);
  std::uniform_int_distribution<std::size_t> ub_count(0, budget - m_eq);
  const std::size_t m_ub = ub_count(rng) + (any_free ? 1 : 0);

  lp.eq_matrix = anticipate::DenseMatrix(m_eq, n);
  lp.eq_rhs.resize(m_eq);
  for (std::size_t i = 0; i < m_eq; ++i) {
    double rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.eq_matrix(i, j) = coef(-5, 5);
      rhs += lp.eq_matrix(i, j) * planted[j];
    }
    lp.eq_rhs[i] = rhs;
  }
  lp.ub_matrix = anticipate::DenseMatrix(m_ub, n);
  lp.ub_rhs.resize(m_ub);
  for (std::size_t i = 0; i < m_ub; ++i) {
    const bool bounding = any_free && i == 0;
    double rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.ub_matrix(i, j) = bounding ? std::max(coef(0.5, 3), 1.0) : coef(-5, 5);
      rhs += lp.ub_matrix(i, j) * planted[j];
    }
    lp.ub_rhs[i] = rhs + (unit(rng) < 0.3 ? 0.0 : coef(0, 4));
  }
  return lp;
}

}  // namespace oracle
