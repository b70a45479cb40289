#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "prefdist/lp.hpp"
#include "prefdist/model.hpp"
#include "prefdist/rng.hpp"

namespace prefdist {

inline constexpr double kRankTolerance = 1e-9;
inline constexpr double kMembershipTolerance = 1e-12;

/// The feasible set of a ConstraintSystem in coordinates where every
/// equality holds identically: x = offset + basis * y, with G y <= h.
struct ReducedPolytope {
  OutcomeSpace space{1};
  Eigen::VectorXd offset;  // satisfies all equalities
  Eigen::MatrixXd basis;   // orthonormal null-space basis, n x d
  Eigen::MatrixXd G;       // reduced inequalities, m x d
  Eigen::VectorXd h;
  /// Index into the source system's constraint list for each row of G.
  std::vector<std::size_t> row_source;
  /// Optional linear map from the constrained variables to utilities over
  /// outcomes (used when the sampled object is a weight vector).
  std::optional<Eigen::MatrixXd> embedding;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(basis.cols()); }
  std::size_t row_count() const noexcept { return static_cast<std::size_t>(G.rows()); }
  /// Size of the utility vectors this polytope produces.
  std::size_t utility_dimension() const noexcept {
    return embedding ? static_cast<std::size_t>(embedding->rows()) : static_cast<std::size_t>(offset.size());
  }

  /// offset + basis * y
  Eigen::VectorXd lift(const Eigen::VectorXd& y) const;
  /// Utility vector at reduced point y (applies the embedding if present).
  Eigen::VectorXd utility(const Eigen::VectorXd& y) const;
};

/// Total order on polytope data; used to assign walk streams canonically so
/// that pairwise estimates are symmetric in their arguments.
int compare(const ReducedPolytope& a, const ReducedPolytope& b);

/// Eliminates the equality subsystem by Gaussian elimination with partial
/// pivoting; inequalities are rewritten in the reduced coordinates. Rows that
/// become constant and hold are dropped; constant violated rows are kept so
/// that the polytope reads as empty.
ReducedPolytope reduce(const ConstraintSystem& system);

bool membership(const ReducedPolytope& poly, const Eigen::VectorXd& y);

/// True iff the system has a feasible point.
bool is_feasible(const ConstraintSystem& system);
bool is_feasible(const ReducedPolytope& poly);

struct ChebyshevBall {
  Eigen::VectorXd center;
  double radius = 0.0;
  /// radius is zero: the polytope has no interior in its reduced space.
  bool degenerate = false;
};

/// Largest inscribed ball. Throws EmptyPolytope when infeasible.
ChebyshevBall chebyshev_center(const ReducedPolytope& poly);

/// Vertex maximizing a random Gaussian objective, nudged into the body if
/// the LP returns a point that misses the membership tolerance.
Eigen::VectorXd random_vertex(const ReducedPolytope& poly, Rng& rng);

/// Converts inequalities that hold with equality on the whole feasible set
/// into equalities. Returns the system unchanged if there are none.
ConstraintSystem promote_implicit_equalities(const ConstraintSystem& system);

struct WalkState {
  Eigen::VectorXd point;
  double radius = 1e-3;
  int success_streak = 0;
  int failure_streak = 0;
};

enum class RadiusMode {
  adaptive,              // double after two consecutive successes, halve after two failures
  fixed_after_burn_in,   // adaptive during burn-in, then frozen
};

/// One ball-walk proposal. With `adapt` false the radius is left alone.
WalkState ball_walk_step(const ReducedPolytope& poly, WalkState state, Rng& rng, bool adapt = true);

struct WalkOptions {
  std::size_t steps = 1000;
  double initial_radius = 1e-3;
  RadiusMode mode = RadiusMode::adaptive;
  double burn_in_fraction = 0.2;
};

using WalkObserver = std::function<void(std::size_t step, const WalkState&)>;

/// Runs `options.steps` proposals (accepted or not) and returns the final point.
Eigen::VectorXd ball_walk_run(const ReducedPolytope& poly, const Eigen::VectorXd& start,
                              const WalkOptions& options, Rng& rng, const WalkObserver& observer = {});

}  // namespace prefdist
