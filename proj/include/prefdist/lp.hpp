#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace prefdist {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;  // optimal point when status == Optimal
  double value = 0.0;
  std::size_t pivots = 0;
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  /// Consecutive degenerate pivots under largest-coefficient pricing before
  /// switching to Bland's rule for the rest of the phase.
  std::size_t degenerate_switch = 50;
};

/// max objective . x  subject to  A x <= b, with x free.
///
/// Dense two-phase tableau simplex. Pricing is largest-coefficient until a
/// streak of degenerate pivots, then Bland's smallest-index rule, which
/// cannot cycle.
LpResult lp_solve(const Eigen::VectorXd& objective, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const LpOptions& options = {});

/// Same, with `nonnegative[j]` marking variables constrained to x_j >= 0
/// (no splitting needed for those).
LpResult lp_solve(const Eigen::VectorXd& objective, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const std::vector<bool>& nonnegative, const LpOptions& options = {});

}  // namespace prefdist
