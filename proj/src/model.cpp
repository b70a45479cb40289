#include "prefdist/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prefdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeProbability: return "NegativeProbability";
    case ErrorKind::SumNotOne: return "SumNotOne";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::EmptyAlternatives: return "EmptyAlternatives";
    case ErrorKind::InconsistentEqualities: return "InconsistentEqualities";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::InfeasibleBase: return "InfeasibleBase";
    case ErrorKind::OffGrid: return "OffGrid";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::TooFewSubjects: return "TooFewSubjects";
    case ErrorKind::InvalidFamilyParameter: return "InvalidFamilyParameter";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::size_t Grid::size() const {
  const double steps = (max_value - min_value) / granularity;
  return static_cast<std::size_t>(std::llround(steps)) + 1;
}

namespace {

void check_grid(const Grid& g) {
  if (!(g.granularity > 0.0) || !std::isfinite(g.min_value) || !std::isfinite(g.max_value))
    throw Error(ErrorKind::InvalidArgument, "grid granularity must be positive and bounds finite");
  if (g.max_value < g.min_value)
    throw Error(ErrorKind::InvalidArgument, "grid max below min");
  const double steps = (g.max_value - g.min_value) / g.granularity;
  const double snapped = std::round(steps);
  if (std::abs(g.min_value + snapped * g.granularity - g.max_value) > kTolerance)
    throw Error(ErrorKind::InvalidArgument, "grid max is not min + k * granularity");
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::size_t n) : n_(n) {
  if (n_ < 1) throw Error(ErrorKind::InvalidDimension, "outcome space needs n >= 1");
}

OutcomeSpace::OutcomeSpace(const Grid& grid) : n_(0), grid_(grid) {
  check_grid(grid);
  n_ = grid.size();
}

OutcomeSpace::OutcomeSpace(std::size_t n, const Grid& grid) : n_(n), grid_(grid) {
  check_grid(grid);
  if (n_ < 1) throw Error(ErrorKind::InvalidDimension, "outcome space needs n >= 1");
  if (std::abs(grid.min_value + static_cast<double>(n - 1) * grid.granularity - grid.max_value) > kTolerance)
    throw Error(ErrorKind::InvalidArgument, "grid does not have n points");
}

Prospect Prospect::validate(std::vector<double> probs, std::size_t n) {
  if (probs.size() != n)
    throw Error(ErrorKind::LengthMismatch,
                "prospect has " + std::to_string(probs.size()) + " entries, expected " + std::to_string(n));
  if (n == 0) throw Error(ErrorKind::LengthMismatch, "empty prospect");
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p)) throw Error(ErrorKind::SumNotOne, "non-finite probability");
    if (p < 0.0) throw Error(ErrorKind::NegativeProbability, "probability " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTolerance)
    throw Error(ErrorKind::SumNotOne, "probabilities sum to " + std::to_string(sum));
  if (sum != 1.0)
    for (double& p : probs) p /= sum;
  return Prospect(std::move(probs));
}

Prospect Prospect::degenerate(std::size_t n, std::size_t at) {
  if (at >= n) throw Error(ErrorKind::OutOfRange, "degenerate prospect index out of range");
  std::vector<double> probs(n, 0.0);
  probs[at] = 1.0;
  return Prospect(std::move(probs));
}

UtilityVector::UtilityVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "utility entries must be finite");
}

double expected_difference(std::span<const double> a, std::span<const double> b,
                           std::span<const double> u) {
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d += (b[i] - a[i]) * u[i];
  return d;
}

LinearConstraint::LinearConstraint(std::vector<Term> terms, Relation relation, double rhs)
    : relation_(relation), rhs_(rhs) {
  std::erase_if(terms, [](const Term& t) { return t.coeff == 0.0; });
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i].index == terms[i - 1].index)
      throw Error(ErrorKind::InvalidArgument, "duplicate index " + std::to_string(terms[i].index) + " in constraint");
  if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "constraint has no nonzero coefficient");
  for (const Term& t : terms)
    if (!std::isfinite(t.coeff)) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
  if (!std::isfinite(rhs)) throw Error(ErrorKind::InvalidArgument, "non-finite rhs");
  terms_ = std::move(terms);
}

LinearConstraint LinearConstraint::merged(std::vector<Term> terms, Relation relation, double rhs) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  std::vector<Term> out;
  for (const Term& t : terms) {
    if (!out.empty() && out.back().index == t.index)
      out.back().coeff += t.coeff;
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const Term& t) { return std::abs(t.coeff) < kTolerance; });
  return LinearConstraint(std::move(out), relation, rhs);
}

double LinearConstraint::evaluate(std::span<const double> u) const {
  double s = 0.0;
  for (const Term& t : terms_) s += t.coeff * u[t.index];
  return s;
}

bool LinearConstraint::satisfied_by(std::span<const double> u, double tol) const {
  const double lhs = evaluate(u);
  if (relation_ == Relation::EQ) return std::abs(lhs - rhs_) <= tol;
  return lhs <= rhs_ + tol;
}

void LinearConstraint::check_indices(std::size_t n) const {
  for (const Term& t : terms_)
    if (t.index >= n)
      throw Error(ErrorKind::OutOfRange, "constraint index " + std::to_string(t.index) + " outside outcome space of size " + std::to_string(n));
}

ConstraintSystem::ConstraintSystem(OutcomeSpace space, std::vector<LinearConstraint> constraints,
                                   std::optional<Anchors> anchors)
    : space_(std::move(space)), anchors_(anchors) {
  const std::size_t n = space_.size();
  if (anchors_) {
    if (anchors_->worst >= n || anchors_->best >= n)
      throw Error(ErrorKind::OutOfRange, "anchor index outside outcome space");
    if (anchors_->worst == anchors_->best)
      throw Error(ErrorKind::InvalidArgument, "worst and best anchors coincide");
  }
  for (auto& c : constraints) {
    c.check_indices(n);
    add_unique(std::move(c));
  }
  if (anchors_) {
    add_unique(LinearConstraint({{anchors_->worst, 1.0}}, Relation::EQ, 0.0));
    add_unique(LinearConstraint({{anchors_->best, 1.0}}, Relation::EQ, 1.0));
  }
  for (std::size_t i = 0; i < n; ++i) {
    add_unique(LinearConstraint({{i, -1.0}}, Relation::LE, 0.0));
    add_unique(LinearConstraint({{i, 1.0}}, Relation::LE, 1.0));
  }
}

void ConstraintSystem::add_unique(LinearConstraint c) {
  if (std::find(constraints_.begin(), constraints_.end(), c) == constraints_.end())
    constraints_.push_back(std::move(c));
}

std::size_t ConstraintSystem::equality_count() const {
  return static_cast<std::size_t>(std::count_if(constraints_.begin(), constraints_.end(),
                                                [](const auto& c) { return c.relation() == Relation::EQ; }));
}

std::size_t ConstraintSystem::inequality_count() const { return constraints_.size() - equality_count(); }

ConstraintSystem ConstraintSystem::with(std::span<const LinearConstraint> extra) const {
  std::vector<LinearConstraint> all = constraints_;
  all.insert(all.end(), extra.begin(), extra.end());
  return ConstraintSystem(space_, std::move(all), anchors_);
}

bool ConstraintSystem::satisfied_by(std::span<const double> u, double tol) const {
  if (u.size() != space_.size()) throw Error(ErrorKind::DimensionMismatch, "utility vector size");
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const auto& c) { return c.satisfied_by(u, tol); });
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> ids) : ids_(std::move(ids)) {
  const std::size_t k = ids_.size();
  upper_.resize(k * (k > 0 ? k - 1 : 0) / 2);
  self_.resize(k);
}

std::size_t DissimilarityMatrix::packed_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t k = ids_.size();
  // Row i of the strict upper triangle starts after sum_{r<i} (k-1-r) entries.
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

DistanceEstimate DissimilarityMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw Error(ErrorKind::OutOfRange, "matrix index");
  if (i == j) return DistanceEstimate{};
  return upper_[packed_index(i, j)];
}

void DissimilarityMatrix::set(std::size_t i, std::size_t j, const DistanceEstimate& e) {
  if (i >= size() || j >= size() || i == j) throw Error(ErrorKind::OutOfRange, "matrix index");
  if (!(e.mean >= 0.0 && e.mean <= 1.0) || !(e.std_error >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "distance mean must lie in [0,1]");
  upper_[packed_index(i, j)] = e;
}

}  // namespace prefdist
