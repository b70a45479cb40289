#include "prefdist/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prefdist {

CEAnswer make_answer(double low, double high, double prob, double ce) {
  if (!std::isfinite(low) || !std::isfinite(high) || !std::isfinite(ce) || !std::isfinite(prob))
    throw Error(ErrorKind::InvalidArgument, "non-finite gamble value");
  if (!(low >= 0.0 && low < high))
    throw Error(ErrorKind::InvalidArgument, "gamble needs 0 <= low < high");
  if (!(prob > 0.0 && prob < 1.0))
    throw Error(ErrorKind::InvalidArgument, "gamble probability must lie in (0,1)");
  CEAnswer a{low, high, prob, ce, false};
  if (ce < low || ce > high) {
    a.ce = std::clamp(ce, low, high);
    a.clamped = true;
  }
  return a;
}

Discretized discretize(double value, const Grid& grid) {
  if (!std::isfinite(value) || value < grid.min_value - kTolerance || value > grid.max_value + kTolerance)
    throw Error(ErrorKind::OutOfRange, "value " + std::to_string(value) + " outside grid [" +
                                           std::to_string(grid.min_value) + ", " + std::to_string(grid.max_value) + "]");
  const double steps = (value - grid.min_value) / grid.granularity;
  const auto index = static_cast<std::size_t>(std::max(0.0, std::round(steps)));
  Discretized out;
  out.index = std::min(index, grid.size() - 1);
  out.snapped = grid.value_at(out.index);
  out.off_grid = std::abs(out.snapped - value) > kTolerance;
  return out;
}

LinearConstraint ce_to_constraint(const CEAnswer& answer, const Grid& grid, bool* off_grid) {
  const Discretized lo = discretize(answer.low, grid);
  const Discretized hi = discretize(answer.high, grid);
  const Discretized ce = discretize(answer.ce, grid);
  if (off_grid) *off_grid = lo.off_grid || hi.off_grid || ce.off_grid;
  if (lo.index == hi.index)
    throw Error(ErrorKind::OffGrid, "gamble outcomes collapse to one grid point");
  return LinearConstraint::merged({{lo.index, 1.0 - answer.prob}, {hi.index, answer.prob}, {ce.index, -1.0}},
                                  Relation::EQ, 0.0);
}

std::vector<LinearConstraint> monotonicity_constraints(const OutcomeSpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "monotonicity needs at least two outcomes");
  std::vector<LinearConstraint> out;
  out.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out.emplace_back(std::vector<Term>{{i, 1.0}, {i + 1, -1.0}}, Relation::LE, 0.0);
  return out;
}

std::vector<LinearConstraint> normalization_constraints(const OutcomeSpace& space) {
  const std::size_t n = space.size();
  if (n < 2) throw Error(ErrorKind::InvalidDimension, "normalization needs at least two outcomes");
  std::vector<LinearConstraint> out;
  out.emplace_back(std::vector<Term>{{0, 1.0}}, Relation::EQ, 0.0);
  out.emplace_back(std::vector<Term>{{n - 1, 1.0}}, Relation::EQ, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(std::vector<Term>{{i, -1.0}}, Relation::LE, 0.0);
    out.emplace_back(std::vector<Term>{{i, 1.0}}, Relation::LE, 1.0);
  }
  return out;
}

ConstraintSystem base_system(const OutcomeSpace& space) {
  auto cons = normalization_constraints(space);
  auto mono = monotonicity_constraints(space);
  cons.insert(cons.end(), mono.begin(), mono.end());
  return ConstraintSystem(space, std::move(cons), Anchors{0, space.size() - 1});
}

namespace {

std::vector<LinearConstraint> simplex_weight_constraints(std::size_t k) {
  std::vector<Term> sum;
  for (std::size_t j = 0; j < k; ++j) sum.push_back({j, 1.0});
  return {LinearConstraint(std::move(sum), Relation::EQ, 1.0)};
}

std::size_t checked_attributes(const std::vector<std::vector<double>>& subutilities) {
  if (subutilities.empty()) throw Error(ErrorKind::ShapeMismatch, "additive cone needs at least one attribute");
  for (const auto& table : subutilities)
    if (table.empty()) throw Error(ErrorKind::ShapeMismatch, "attribute with no levels");
  return subutilities.size();
}

}  // namespace

AdditiveCone::AdditiveCone(std::vector<std::vector<double>> subutilities)
    : subutilities_(std::move(subutilities)),
      weights_(OutcomeSpace(checked_attributes(subutilities_)),
               simplex_weight_constraints(subutilities_.size()), std::nullopt) {
  std::size_t outcomes = 1;
  for (const auto& table : subutilities_) outcomes *= table.size();
  outcome_utilities_.resize(static_cast<Eigen::Index>(outcomes), static_cast<Eigen::Index>(subutilities_.size()));
  for (std::size_t x = 0; x < outcomes; ++x) {
    const auto lv = levels(x);
    for (std::size_t j = 0; j < subutilities_.size(); ++j)
      outcome_utilities_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) = subutilities_[j][lv[j]];
  }
}

std::vector<std::size_t> AdditiveCone::levels(std::size_t x) const {
  std::vector<std::size_t> lv(subutilities_.size());
  for (std::size_t j = subutilities_.size(); j-- > 0;) {
    lv[j] = x % subutilities_[j].size();
    x /= subutilities_[j].size();
  }
  return lv;
}

bool AdditiveCone::add_preference(const Prospect& p, const Prospect& q) {
  if (p.size() != outcome_count() || q.size() != outcome_count())
    throw Error(ErrorKind::ShapeMismatch, "prospect size does not match the outcome count");
  std::vector<Term> terms;
  for (std::size_t j = 0; j < attribute_count(); ++j) {
    double c = 0.0;
    for (std::size_t x = 0; x < outcome_count(); ++x)
      c += (p[x] - q[x]) * outcome_utilities_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j));
    if (std::abs(c) > kTolerance) terms.push_back({j, c});
  }
  if (terms.empty()) return false;
  const LinearConstraint row(std::move(terms), Relation::LE, 0.0);
  weights_ = weights_.with(std::span<const LinearConstraint>(&row, 1));
  return true;
}

UtilityVector AdditiveCone::utilities(std::span<const double> weights) const {
  if (weights.size() != attribute_count()) throw Error(ErrorKind::ShapeMismatch, "weight vector size");
  const Eigen::Map<const Eigen::VectorXd> k(weights.data(), static_cast<Eigen::Index>(weights.size()));
  const Eigen::VectorXd u = outcome_utilities_ * k;
  return UtilityVector(std::vector<double>(u.data(), u.data() + u.size()));
}

ReducedPolytope AdditiveCone::polytope() const {
  ReducedPolytope poly = reduce(weights_);
  poly.embedding = outcome_utilities_;
  return poly;
}

AdditiveCone additive_cone(std::vector<std::vector<double>> subutilities) {
  return AdditiveCone(std::move(subutilities));
}

GreedySelection greedy_consistent_subset(std::span<const LinearConstraint> equalities,
                                         const ConstraintSystem& base, Rng& rng) {
  if (!is_feasible(base)) throw Error(ErrorKind::InfeasibleBase, "base constraint system is infeasible");

  std::vector<std::size_t> order(equalities.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  GreedySelection sel;
  std::vector<LinearConstraint> kept;
  for (std::size_t idx : order) {
    kept.push_back(equalities[idx]);
    if (is_feasible(base.with(kept))) {
      sel.kept.push_back(idx);
    } else {
      kept.pop_back();
      sel.dropped.push_back(idx);
    }
  }
  return sel;
}

SubjectPolytope build_subject_polytope(const Subject& subject, const OutcomeSpace& space, Rng& rng) {
  if (!space.grid()) throw Error(ErrorKind::InvalidArgument, "subject polytopes need a gridded outcome space");
  const Grid& grid = *space.grid();

  SubjectReport report;
  report.answers = subject.answers.size();
  std::vector<LinearConstraint> candidates;
  candidates.reserve(subject.answers.size());
  for (const CEAnswer& a : subject.answers) {
    bool off = false;
    candidates.push_back(ce_to_constraint(a, grid, &off));
    report.off_grid += off ? 1 : 0;
    report.clamped += a.clamped ? 1 : 0;
  }

  const ConstraintSystem base = base_system(space);
  const GreedySelection sel = greedy_consistent_subset(candidates, base, rng);
  std::vector<LinearConstraint> kept;
  for (std::size_t i : sel.kept) kept.push_back(candidates[i]);
  report.kept = sel.kept.size();
  report.dropped = sel.dropped.size();
  report.dropped_answers = sel.dropped;
  std::sort(report.dropped_answers.begin(), report.dropped_answers.end());

  ConstraintSystem system = base.with(kept);
  ReducedPolytope poly = reduce(system);
  ChebyshevBall ball = chebyshev_center(poly);
  if (ball.degenerate && poly.dimension() > 0) {
    const std::size_t before = system.equality_count();
    system = promote_implicit_equalities(system);
    report.promoted_equalities = system.equality_count() - before;
    poly = reduce(system);
    ball = chebyshev_center(poly);
  }
  report.equalities = system.equality_count();
  report.inequalities = system.inequality_count();
  report.dimension = poly.dimension();
  report.inradius = ball.radius;
  report.degenerate = ball.degenerate;
  return SubjectPolytope{std::move(system), std::move(poly), std::move(ball), std::move(report)};
}

}  // namespace prefdist
