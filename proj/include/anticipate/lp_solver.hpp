#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace anticipate {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// minimize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  0 <= x <= u.
///
/// A matrix with zero rows is an absent block. An empty `var_upper_bounds`
/// means every variable is unbounded above.
struct LpProblem {
  std::vector<double> objective;
  DenseMatrix eq_matrix;
  std::vector<double> eq_rhs;
  DenseMatrix ub_matrix;
  std::vector<double> ub_rhs;
  std::vector<double> var_upper_bounds;

  std::size_t num_vars() const { return objective.size(); }
  /// Throws std::invalid_argument on inconsistent dimensions or bad entries.
  void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  /// Phase-2 reduced costs of the structural variables at the final basis.
  std::vector<double> reduced_costs;
  /// Per structural variable: true if it is basic at the final basis.
  std::vector<bool> basic;
  std::size_t iterations = 0;
};

struct SolverOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-9;
  /// Consecutive degenerate pivots tolerated under Dantzig pricing before the
  /// solver switches to Bland's rule for the rest of the solve.
  std::size_t stall_threshold = 50;
  bool always_bland = false;
  std::size_t max_iterations = 1'000'000;
};

/// Two-phase dense primal simplex with bounded variables. Pricing is Dantzig
/// until the stall threshold, then Bland's smallest-index rule, which
/// guarantees termination. Identical problems give identical solutions.
LpSolution solve(const LpProblem& problem, const SolverOptions& options = {});

}  // namespace anticipate
