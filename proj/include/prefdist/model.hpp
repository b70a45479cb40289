#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefdist/error.hpp"

namespace prefdist {

/// Tolerance used for probability sums and constraint validation.
inline constexpr double kTolerance = 1e-9;

struct Grid {
  double min_value = 0.0;
  double max_value = 36.0;
  double granularity = 0.125;

  /// Number of grid points, `(max - min) / granularity + 1`.
  std::size_t size() const;
  double value_at(std::size_t index) const { return min_value + static_cast<double>(index) * granularity; }

  bool operator==(const Grid&) const = default;
};

/// The finite outcome set {0, ..., n-1}, optionally labelled by a numeric grid.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::size_t n);
  explicit OutcomeSpace(const Grid& grid);
  OutcomeSpace(std::size_t n, const Grid& grid);

  std::size_t size() const noexcept { return n_; }
  const std::optional<Grid>& grid() const noexcept { return grid_; }

  bool operator==(const OutcomeSpace&) const = default;

 private:
  std::size_t n_;
  std::optional<Grid> grid_;
};

/// A probability vector over outcomes: a point of the simplex.
class Prospect {
 public:
  /// Validates `probs`: entries nonnegative, sum within kTolerance of one.
  /// Small sum deviations are renormalized away.
  static Prospect validate(std::vector<double> probs, std::size_t n);
  static Prospect validate(std::vector<double> probs) {
    const std::size_t n = probs.size();
    return validate(std::move(probs), n);
  }
  static Prospect degenerate(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const noexcept { return probs_; }

 private:
  explicit Prospect(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

inline Prospect validate_prospect(std::vector<double> probs, std::size_t n) {
  return Prospect::validate(std::move(probs), n);
}

/// A utility (or value) function over outcomes, as a point in R^n.
class UtilityVector {
 public:
  UtilityVector() = default;
  explicit UtilityVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const UtilityVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Expected-utility difference <b - a, u>, accumulated left to right.
double expected_difference(std::span<const double> a, std::span<const double> b,
                           std::span<const double> u);

enum class Relation { LE, EQ };

struct Term {
  std::size_t index;
  double coeff;
  bool operator==(const Term&) const = default;
};

/// sum(coeff * u[index]) (<= | ==) rhs
class LinearConstraint {
 public:
  /// Duplicate indices are rejected; zero coefficients are dropped.
  LinearConstraint(std::vector<Term> terms, Relation relation, double rhs);

  /// Builds a constraint from possibly repeated indices by summing them, then
  /// dropping coefficients that cancel below kTolerance.
  static LinearConstraint merged(std::vector<Term> terms, Relation relation, double rhs);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  Relation relation() const noexcept { return relation_; }
  double rhs() const noexcept { return rhs_; }

  double evaluate(std::span<const double> u) const;
  bool satisfied_by(std::span<const double> u, double tol) const;
  void check_indices(std::size_t n) const;

  bool operator==(const LinearConstraint&) const = default;

 private:
  std::vector<Term> terms_;
  Relation relation_;
  double rhs_;
};

struct Anchors {
  std::size_t worst;
  std::size_t best;
  bool operator==(const Anchors&) const = default;
};

/// A set of linear constraints on utility vectors. Construction always adds
/// the box 0 <= u(i) <= 1 and, when anchors are given, u(worst) = 0 and
/// u(best) = 1, unless identical rows are already present.
class ConstraintSystem {
 public:
  ConstraintSystem(OutcomeSpace space, std::vector<LinearConstraint> constraints,
                   std::optional<Anchors> anchors);

  const OutcomeSpace& space() const noexcept { return space_; }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  const std::optional<Anchors>& anchors() const noexcept { return anchors_; }

  std::size_t equality_count() const;
  std::size_t inequality_count() const;

  /// New system with `extra` appended.
  ConstraintSystem with(std::span<const LinearConstraint> extra) const;

  bool satisfied_by(std::span<const double> u, double tol) const;

 private:
  void add_unique(LinearConstraint c);

  OutcomeSpace space_;
  std::vector<LinearConstraint> constraints_;
  std::optional<Anchors> anchors_;
};

struct DistanceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t outer_samples = 0;
  std::size_t inner_samples = 0;
};

/// Symmetric matrix of pairwise distance estimates. Off-diagonal entries are
/// stored once (upper triangle) and mirrored on read.
class DissimilarityMatrix {
 public:
  explicit DissimilarityMatrix(std::vector<std::string> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  /// Entry (i, j). The diagonal reads as a zero estimate.
  DistanceEstimate at(std::size_t i, std::size_t j) const;
  double mean(std::size_t i, std::size_t j) const { return at(i, j).mean; }
  void set(std::size_t i, std::size_t j, const DistanceEstimate& e);

  const DistanceEstimate& self_distance(std::size_t i) const { return self_.at(i); }
  void set_self_distance(std::size_t i, const DistanceEstimate& e) { self_.at(i) = e; }

 private:
  std::size_t packed_index(std::size_t i, std::size_t j) const;

  std::vector<std::string> ids_;
  std::vector<DistanceEstimate> upper_;
  std::vector<DistanceEstimate> self_;
};

}  // namespace prefdist
