#include "anticipate/lp_solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace anticipate {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);
constexpr double kTieTolerance = 1e-12;

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_block(const DenseMatrix& m, std::size_t rhs_size, std::size_t n, const char* name) {
  if (m.rows() != rhs_size) {
    throw std::invalid_argument(std::string("LpProblem: ") + name + " has " +
                                std::to_string(m.rows()) + " rows but rhs has " +
                                std::to_string(rhs_size) + " entries");
  }
  if (m.rows() > 0 && m.cols() != n) {
    throw std::invalid_argument(std::string("LpProblem: ") + name + " has " +
                                std::to_string(m.cols()) + " columns, expected " +
                                std::to_string(n));
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!all_finite(m.row(r))) {
      throw std::invalid_argument(std::string("LpProblem: non-finite entry in ") + name);
    }
  }
}

enum class VarState : unsigned char { basic, at_lower, at_upper };
enum class PhaseResult { optimal, unbounded };

// Bounded-variable tableau simplex over  A x = b (b >= 0),  0 <= x <= u.
// Column layout: structural | ub slacks | artificials.
class Simplex {
 public:
  Simplex(const LpProblem& problem, const SolverOptions& options)
      : options_(options), bland_(options.always_bland) {
    n_struct_ = problem.num_vars();
    const std::size_t m_eq = problem.eq_matrix.rows();
    const std::size_t m_ub = problem.ub_matrix.rows();
    m_ = m_eq + m_ub;

    std::vector<double> rhs(m_);
    std::vector<double> sign(m_, 1.0);
    std::vector<bool> needs_artificial(m_, true);
    for (std::size_t i = 0; i < m_eq; ++i) rhs[i] = problem.eq_rhs[i];
    for (std::size_t i = 0; i < m_ub; ++i) rhs[m_eq + i] = problem.ub_rhs[i];
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0) sign[i] = -1.0;
      // A <= row with non-negative rhs starts with its slack basic.
      if (i >= m_eq && sign[i] > 0) needs_artificial[i] = false;
      if (needs_artificial[i]) ++artificials;
    }

    first_artificial_ = n_struct_ + m_ub;
    n_ = first_artificial_ + artificials;
    tab_ = DenseMatrix(m_, n_);
    beta_.resize(m_);
    basis_.resize(m_);
    upper_.assign(n_, kInfinity);
    state_.assign(n_, VarState::at_lower);
    if (!problem.var_upper_bounds.empty()) {
      for (std::size_t j = 0; j < n_struct_; ++j) upper_[j] = problem.var_upper_bounds[j];
    }

    std::size_t next_artificial = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto src = i < m_eq ? problem.eq_matrix.row(i) : problem.ub_matrix.row(i - m_eq);
      for (std::size_t j = 0; j < n_struct_; ++j) tab_(i, j) = sign[i] * src[j];
      if (i >= m_eq) tab_(i, n_struct_ + (i - m_eq)) = sign[i];
      beta_[i] = sign[i] * rhs[i];
      if (needs_artificial[i]) {
        tab_(i, next_artificial) = 1.0;
        basis_[i] = next_artificial++;
      } else {
        basis_[i] = n_struct_ + (i - m_eq);
      }
      state_[basis_[i]] = VarState::basic;
    }
  }

  LpSolution run(const LpProblem& problem) {
    LpSolution solution;
    if (n_ > first_artificial_) {
      std::vector<double> phase1_cost(n_, 0.0);
      for (std::size_t j = first_artificial_; j < n_; ++j) phase1_cost[j] = 1.0;
      compute_reduced_costs(phase1_cost);
      iterate();  // bounded below by zero, never unbounded

      double infeasibility = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= first_artificial_) infeasibility += beta_[i];
      }
      if (infeasibility > options_.feasibility_tolerance) {
        solution.status = LpStatus::infeasible;
        solution.iterations = iterations_;
        return solution;
      }
      drive_out_artificials();
    }

    std::vector<double> cost(n_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) cost[j] = problem.objective[j];
    compute_reduced_costs(cost);
    const auto result = iterate();
    solution.iterations = iterations_;
    if (result == PhaseResult::unbounded) {
      solution.status = LpStatus::unbounded;
      return solution;
    }

    solution.status = LpStatus::optimal;
    solution.x.assign(n_struct_, 0.0);
    solution.basic.assign(n_struct_, false);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (state_[j] == VarState::at_upper) solution.x[j] = upper_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) {
        solution.x[basis_[i]] = beta_[i];
        solution.basic[basis_[i]] = true;
      }
    }
    solution.reduced_costs.assign(d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(n_struct_));
    for (std::size_t j = 0; j < n_struct_; ++j) {
      solution.objective_value += problem.objective[j] * solution.x[j];
    }
    return solution;
  }

 private:
  void compute_reduced_costs(const std::vector<double>& cost) {
    d_ = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const auto row = tab_.row(i);
      for (std::size_t j = 0; j < n_; ++j) d_[j] -= cb * row[j];
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  std::size_t choose_entering() const {
    const double tol = options_.optimality_tolerance;
    std::size_t entering = kNone;
    double best = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] == VarState::basic || !(upper_[j] > 0)) continue;
      const bool improving = (state_[j] == VarState::at_lower && d_[j] < -tol) ||
                             (state_[j] == VarState::at_upper && d_[j] > tol);
      if (!improving) continue;
      if (bland_) return j;
      if (std::abs(d_[j]) > best) {
        best = std::abs(d_[j]);
        entering = j;
      }
    }
    return entering;
  }

  PhaseResult iterate() {
    for (;;) {
      if (iterations_ >= options_.max_iterations) {
        throw std::runtime_error("simplex: iteration limit reached");
      }
      const std::size_t enter = choose_entering();
      if (enter == kNone) return PhaseResult::optimal;
      ++iterations_;

      const double dir = state_[enter] == VarState::at_lower ? 1.0 : -1.0;
      double theta = upper_[enter];  // bound flip
      std::size_t leave_row = kNone;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = tab_(i, enter);
        if (std::abs(a) <= options_.pivot_tolerance) continue;
        const double rate = -a * dir;
        const std::size_t var = basis_[i];
        double limit;
        if (rate < 0) {
          limit = beta_[i] / -rate;
        } else if (std::isfinite(upper_[var])) {
          limit = (upper_[var] - beta_[i]) / rate;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        if (limit < theta - kTieTolerance) {
          theta = limit;
          leave_row = i;
        } else if (leave_row != kNone && limit <= theta + kTieTolerance) {
          const bool better = bland_ ? var < basis_[leave_row]
                                     : std::abs(a) > std::abs(tab_(leave_row, enter));
          if (better) {
            theta = std::min(theta, limit);
            leave_row = i;
          }
        }
      }
      if (!std::isfinite(theta)) return PhaseResult::unbounded;

      if (theta > 0) {
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = tab_(i, enter);
          if (a != 0.0) beta_[i] -= a * dir * theta;
        }
      }

      if (leave_row == kNone) {
        state_[enter] = state_[enter] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
        degenerate_run_ = 0;
        continue;
      }

      const double entering_value =
          (state_[enter] == VarState::at_upper ? upper_[enter] : 0.0) + dir * theta;
      const std::size_t leaving = basis_[leave_row];
      const double leave_rate = -tab_(leave_row, enter) * dir;
      pivot(leave_row, enter);
      state_[leaving] = leave_rate < 0 ? VarState::at_lower : VarState::at_upper;
      state_[enter] = VarState::basic;
      basis_[leave_row] = enter;
      beta_[leave_row] = entering_value;

      if (theta <= kTieTolerance) {
        if (++degenerate_run_ > options_.stall_threshold) bland_ = true;
      } else {
        degenerate_run_ = 0;
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto prow = tab_.row(r);
    const double p = prow[c];
    nonzeros_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] /= p;
        nonzeros_.push_back(j);
      }
    }
    prow[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto row = tab_.row(i);
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j : nonzeros_) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = d_[c];
    if (f != 0.0) {
      for (std::size_t j : nonzeros_) d_[j] -= f * prow[j];
      d_[c] = 0.0;
    }
  }

  // After phase 1, artificials are fixed at zero; basic ones are exchanged for
  // any structural or slack column with a usable pivot in their row.
  void drive_out_artificials() {
    for (std::size_t j = first_artificial_; j < n_; ++j) upper_[j] = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      std::size_t best = kNone;
      double best_abs = options_.pivot_tolerance;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (state_[j] == VarState::basic) continue;
        if (std::abs(tab_(r, j)) > best_abs) {
          best_abs = std::abs(tab_(r, j));
          best = j;
        }
      }
      if (best == kNone) continue;  // redundant row; its artificial stays basic at zero
      const double value = state_[best] == VarState::at_upper ? upper_[best] : 0.0;
      const std::size_t leaving = basis_[r];
      pivot(r, best);
      state_[leaving] = VarState::at_lower;
      state_[best] = VarState::basic;
      basis_[r] = best;
      beta_[r] = value;
    }
  }

  const SolverOptions& options_;
  bool bland_ = false;
  std::size_t n_struct_ = 0;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t first_artificial_ = 0;
  DenseMatrix tab_;
  std::vector<double> beta_;
  std::vector<double> upper_;
  std::vector<double> d_;
  std::vector<std::size_t> basis_;
  std::vector<VarState> state_;
  std::vector<std::size_t> nonzeros_;
  std::size_t iterations_ = 0;
  std::size_t degenerate_run_ = 0;
};

}  // namespace

void LpProblem::validate() const {
  const std::size_t n = num_vars();
  if (n == 0) throw std::invalid_argument("LpProblem: no variables");
  if (!all_finite(objective)) throw std::invalid_argument("LpProblem: non-finite objective");
  check_block(eq_matrix, eq_rhs.size(), n, "eq_matrix");
  check_block(ub_matrix, ub_rhs.size(), n, "ub_matrix");
  if (!all_finite(eq_rhs) || !all_finite(ub_rhs)) {
    throw std::invalid_argument("LpProblem: non-finite right-hand side");
  }
  if (!var_upper_bounds.empty()) {
    if (var_upper_bounds.size() != n) {
      throw std::invalid_argument("LpProblem: var_upper_bounds has " +
                                  std::to_string(var_upper_bounds.size()) + " entries, expected " +
                                  std::to_string(n));
    }
    for (double u : var_upper_bounds) {
      if (std::isnan(u) || u < 0) {
        throw std::invalid_argument("LpProblem: upper bounds must be >= 0");
      }
    }
  }
}

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

LpSolution solve(const LpProblem& problem, const SolverOptions& options) {
  problem.validate();
  Simplex simplex(problem, options);
  return simplex.run(problem);
}

}  // namespace anticipate
