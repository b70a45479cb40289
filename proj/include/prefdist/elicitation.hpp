#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prefdist/model.hpp"
#include "prefdist/polytope.hpp"
#include "prefdist/rng.hpp"

namespace prefdist {

/// A standard-gamble answer: the gamble (low, prob, high) is judged
/// equivalent to `ce` for certain. `prob` is the chance of `high`.
struct CEAnswer {
  double low = 0.0;
  double high = 0.0;
  double prob = 0.5;
  double ce = 0.0;
  /// ce was outside [low, high] and has been clamped.
  bool clamped = false;
};

/// Validates the gamble and clamps ce into [low, high] (flagging it).
CEAnswer make_answer(double low, double high, double prob, double ce);

struct Subject {
  std::string id;
  std::vector<CEAnswer> answers;
};

struct Discretized {
  std::size_t index = 0;
  double snapped = 0.0;  // the grid value actually used
  bool off_grid = false;
};

/// Nearest grid index of `value`. Values more than kTolerance from a grid
/// point are still rounded, and flagged.
Discretized discretize(double value, const Grid& grid);

/// (1 - prob) u(low) + prob u(high) - u(ce) = 0 on the grid indices.
/// `off_grid` (optional) is set when any of the three values needed rounding.
LinearConstraint ce_to_constraint(const CEAnswer& answer, const Grid& grid, bool* off_grid = nullptr);

/// u(i) - u(i+1) <= 0 for consecutive outcomes.
std::vector<LinearConstraint> monotonicity_constraints(const OutcomeSpace& space);

/// u(0) = 0, u(n-1) = 1, and 0 <= u(i) <= 1.
std::vector<LinearConstraint> normalization_constraints(const OutcomeSpace& space);

/// Monotone, normalized utility vectors: the vacuous partial preference.
ConstraintSystem base_system(const OutcomeSpace& space);

/// Additive utility u(x) = sum_j k_j u_j(x_j) with known subutility tables
/// and unknown weights k_j >= 0, sum k_j = 1. Outcomes enumerate attribute
/// levels with the first attribute varying slowest.
class AdditiveCone {
 public:
  explicit AdditiveCone(std::vector<std::vector<double>> subutilities);

  std::size_t attribute_count() const noexcept { return subutilities_.size(); }
  std::size_t outcome_count() const noexcept { return static_cast<std::size_t>(outcome_utilities_.rows()); }
  /// Levels of each attribute for outcome `x`.
  std::vector<std::size_t> levels(std::size_t x) const;
  /// outcomes x attributes matrix of u_j(x_j).
  const Eigen::MatrixXd& outcome_utilities() const noexcept { return outcome_utilities_; }

  const ConstraintSystem& weights() const noexcept { return weights_; }

  /// Adds the statement "p is at most as good as q": <u, p - q> <= 0 written
  /// in the weights. A statement that no weight vector can violate is a no-op;
  /// returns whether a constraint was added.
  bool add_preference(const Prospect& p, const Prospect& q);

  /// Utility vector over outcomes for a weight vector.
  UtilityVector utilities(std::span<const double> weights) const;

  /// Reduced weight polytope whose embedding maps samples to outcome utilities.
  ReducedPolytope polytope() const;

 private:
  std::vector<std::vector<double>> subutilities_;
  Eigen::MatrixXd outcome_utilities_;
  ConstraintSystem weights_;
};

AdditiveCone additive_cone(std::vector<std::vector<double>> subutilities);

struct GreedySelection {
  std::vector<std::size_t> kept;     // indices into the candidate list, in insertion order
  std::vector<std::size_t> dropped;  // likewise
};

/// Shuffles the candidate equalities, then adds them one at a time, keeping
/// each one only if the system stays feasible.
GreedySelection greedy_consistent_subset(std::span<const LinearConstraint> equalities,
                                         const ConstraintSystem& base, Rng& rng);

struct SubjectReport {
  std::size_t answers = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
  std::vector<std::size_t> dropped_answers;  // indices into Subject::answers
  std::size_t off_grid = 0;
  std::size_t clamped = 0;
  std::size_t promoted_equalities = 0;
  std::size_t equalities = 0;
  std::size_t inequalities = 0;
  std::size_t dimension = 0;
  double inradius = 0.0;
  bool degenerate = false;
};

struct SubjectPolytope {
  ConstraintSystem system;
  ReducedPolytope polytope;
  ChebyshevBall center;
  SubjectReport report;
};

/// Normalization + monotonicity + a greedy consistent subset of the CE
/// equalities. Inequalities that are tight on the whole feasible set are
/// promoted to equalities, so the reduced polytope has an interior unless
/// it is a single point.
SubjectPolytope build_subject_polytope(const Subject& subject, const OutcomeSpace& space, Rng& rng);

}  // namespace prefdist
