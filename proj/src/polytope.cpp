#include "prefdist/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prefdist {

Eigen::VectorXd ReducedPolytope::lift(const Eigen::VectorXd& y) const {
  if (static_cast<std::size_t>(y.size()) != dimension())
    throw Error(ErrorKind::DimensionMismatch, "reduced point has wrong dimension");
  if (dimension() == 0) return offset;
  return offset + basis * y;
}

Eigen::VectorXd ReducedPolytope::utility(const Eigen::VectorXd& y) const {
  if (embedding) return *embedding * lift(y);
  return lift(y);
}

namespace {

int compare_values(const double* a, const double* b, Eigen::Index n) {
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

int compare_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  return compare_values(a.data(), b.data(), a.size());
}

}  // namespace

int compare(const ReducedPolytope& a, const ReducedPolytope& b) {
  if (int c = compare_matrix(a.offset, b.offset)) return c;
  if (int c = compare_matrix(a.basis, b.basis)) return c;
  if (int c = compare_matrix(a.G, b.G)) return c;
  if (int c = compare_matrix(a.h, b.h)) return c;
  if (a.embedding.has_value() != b.embedding.has_value()) return a.embedding ? 1 : -1;
  if (a.embedding) return compare_matrix(*a.embedding, *b.embedding);
  return 0;
}

ReducedPolytope reduce(const ConstraintSystem& system) {
  const std::size_t n = system.space().size();
  const auto& cons = system.constraints();

  std::vector<std::size_t> eq_rows, le_rows;
  for (std::size_t i = 0; i < cons.size(); ++i)
    (cons[i].relation() == Relation::EQ ? eq_rows : le_rows).push_back(i);

  // Augmented equality matrix [E | f], reduced to row echelon form.
  const std::size_t r = eq_rows.size();
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n + 1));
  for (std::size_t k = 0; k < r; ++k) {
    const auto& c = cons[eq_rows[k]];
    for (const Term& t : c.terms()) E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t.index)) = t.coeff;
    E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n)) = c.rhs();
  }

  std::vector<std::size_t> pivot_cols;
  Eigen::Index row = 0;
  const auto rows = static_cast<Eigen::Index>(r);
  for (std::size_t col = 0; col < n && row < rows; ++col) {
    const auto jc = static_cast<Eigen::Index>(col);
    Eigen::Index best;
    const double mag = E.col(jc).segment(row, rows - row).cwiseAbs().maxCoeff(&best);
    if (mag <= kRankTolerance) continue;
    best += row;
    if (best != row) E.row(best).swap(E.row(row));
    E.row(row) /= E(row, jc);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row) continue;
      const double f = E(i, jc);
      if (f != 0.0) E.row(i) -= f * E.row(row);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (Eigen::Index i = row; i < rows; ++i)
    if (std::abs(E(i, static_cast<Eigen::Index>(n))) > kRankTolerance)
      throw Error(ErrorKind::InconsistentEqualities, "equality constraints have no common solution");

  const std::size_t rank = pivot_cols.size();
  const std::size_t d = n - rank;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  Eigen::VectorXd particular = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < rank; ++k)
    particular(static_cast<Eigen::Index>(pivot_cols[k])) = E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));

  ReducedPolytope poly;
  poly.space = system.space();
  if (d > 0) {
    Eigen::MatrixXd null(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    null.setZero();
    std::size_t f = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (is_pivot[col]) continue;
      const auto jf = static_cast<Eigen::Index>(f);
      null(static_cast<Eigen::Index>(col), jf) = 1.0;
      for (std::size_t k = 0; k < rank; ++k)
        null(static_cast<Eigen::Index>(pivot_cols[k]), jf) = -E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col));
      ++f;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(null);
    poly.basis = qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    poly.offset = particular - poly.basis * (poly.basis.transpose() * particular);
  } else {
    poly.basis.resize(static_cast<Eigen::Index>(n), 0);
    poly.offset = particular;
  }

  // Reduced inequalities: a.(offset + B y) <= b  ->  (a B) y <= b - a.offset
  std::vector<Eigen::RowVectorXd> g_rows;
  std::vector<double> h_vals;
  for (std::size_t idx : le_rows) {
    const auto& c = cons[idx];
    Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(d));
    double h = c.rhs();
    for (const Term& t : c.terms()) {
      const auto ti = static_cast<Eigen::Index>(t.index);
      if (d > 0) g += t.coeff * poly.basis.row(ti);
      h -= t.coeff * poly.offset(ti);
    }
    if (g.size() == 0 || g.cwiseAbs().maxCoeff() <= 1e-12) {
      if (h >= -kRankTolerance) continue;
      g.setZero();
    }
    g_rows.push_back(std::move(g));
    h_vals.push_back(h);
    poly.row_source.push_back(idx);
  }
  poly.G.resize(static_cast<Eigen::Index>(g_rows.size()), static_cast<Eigen::Index>(d));
  poly.h.resize(static_cast<Eigen::Index>(g_rows.size()));
  for (std::size_t i = 0; i < g_rows.size(); ++i) {
    poly.G.row(static_cast<Eigen::Index>(i)) = g_rows[i];
    poly.h(static_cast<Eigen::Index>(i)) = h_vals[i];
  }
  return poly;
}

bool membership(const ReducedPolytope& poly, const Eigen::VectorXd& y) {
  if (static_cast<std::size_t>(y.size()) != poly.dimension())
    throw Error(ErrorKind::DimensionMismatch, "membership: point has wrong dimension");
  if (poly.row_count() == 0) return true;
  if (poly.dimension() == 0) return (poly.h.array() >= -kMembershipTolerance).all();
  return ((poly.G * y - poly.h).array() <= kMembershipTolerance).all();
}

bool is_feasible(const ReducedPolytope& poly) {
  if (poly.row_count() == 0) return true;
  if (poly.dimension() == 0) return (poly.h.array() >= -kRankTolerance).all();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(poly.dimension()));
  return lp_solve(zero, poly.G, poly.h).status != LpStatus::Infeasible;
}

bool is_feasible(const ConstraintSystem& system) {
  try {
    return is_feasible(reduce(system));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InconsistentEqualities) return false;
    throw;
  }
}

ChebyshevBall chebyshev_center(const ReducedPolytope& poly) {
  const auto d = static_cast<Eigen::Index>(poly.dimension());
  const auto m = static_cast<Eigen::Index>(poly.row_count());
  ChebyshevBall ball;
  if (d == 0) {
    if (!is_feasible(poly)) throw Error(ErrorKind::EmptyPolytope, "polytope is empty");
    ball.center.resize(0);
    ball.degenerate = true;
    return ball;
  }
  // Variables (y, r): g_i y + |g_i| r <= h_i, r >= 0.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, d + 1);
  A.leftCols(d) = poly.G;
  A.col(d) = poly.G.rowwise().norm();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
  c(d) = 1.0;
  std::vector<bool> nonneg(static_cast<std::size_t>(d + 1), false);
  nonneg.back() = true;
  const LpResult res = lp_solve(c, A, poly.h, nonneg);
  if (res.status == LpStatus::Infeasible) throw Error(ErrorKind::EmptyPolytope, "polytope is empty");
  if (res.status == LpStatus::Unbounded) throw Error(ErrorKind::InvalidArgument, "polytope is unbounded");
  ball.center = res.x.head(d);
  ball.radius = std::max(0.0, res.x(d));
  ball.degenerate = ball.radius <= kRankTolerance;
  return ball;
}

Eigen::VectorXd random_vertex(const ReducedPolytope& poly, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(poly.dimension());
  if (d == 0) {
    if (!is_feasible(poly)) throw Error(ErrorKind::EmptyPolytope, "polytope is empty");
    return Eigen::VectorXd(0);
  }
  Eigen::VectorXd c(d);
  for (Eigen::Index i = 0; i < d; ++i) c(i) = rng.normal();
  const LpResult res = lp_solve(c, poly.G, poly.h);
  if (res.status == LpStatus::Infeasible) throw Error(ErrorKind::EmptyPolytope, "polytope is empty");
  if (res.status == LpStatus::Unbounded) throw Error(ErrorKind::InvalidArgument, "polytope is unbounded");
  Eigen::VectorXd v = res.x;
  if (membership(poly, v)) return v;
  const Eigen::VectorXd center = chebyshev_center(poly).center;
  for (double t = 1e-12; t <= 1.0; t *= 10.0) {
    Eigen::VectorXd p = (1.0 - t) * v + t * center;
    if (membership(poly, p)) return p;
  }
  return center;
}

ConstraintSystem promote_implicit_equalities(const ConstraintSystem& system) {
  const ReducedPolytope poly = reduce(system);
  const auto d = static_cast<Eigen::Index>(poly.dimension());
  const auto m = static_cast<Eigen::Index>(poly.row_count());
  if (m == 0 || d == 0) return system;

  // Rows proven slack somewhere are settled; maximize total capped slack of
  // the rest until nothing improves. What remains is tight everywhere.
  std::vector<bool> settled(static_cast<std::size_t>(m), false);
  for (;;) {
    std::vector<Eigen::Index> open;
    for (Eigen::Index i = 0; i < m; ++i)
      if (!settled[static_cast<std::size_t>(i)]) open.push_back(i);
    if (open.empty()) break;
    const auto k = static_cast<Eigen::Index>(open.size());
    // Variables (y, t): G y + S t <= h, t <= 1, t >= 0, max sum t.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + k, d + k);
    A.topLeftCorner(m, d) = poly.G;
    for (Eigen::Index j = 0; j < k; ++j) {
      A(open[static_cast<std::size_t>(j)], d + j) = 1.0;
      A(m + j, d + j) = 1.0;
    }
    Eigen::VectorXd b(m + k);
    b.head(m) = poly.h;
    b.tail(k).setOnes();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d + k);
    c.tail(k).setOnes();
    std::vector<bool> nonneg(static_cast<std::size_t>(d + k), false);
    for (Eigen::Index j = 0; j < k; ++j) nonneg[static_cast<std::size_t>(d + j)] = true;
    const LpResult res = lp_solve(c, A, b, nonneg);
    if (res.status != LpStatus::Optimal) throw Error(ErrorKind::EmptyPolytope, "polytope is empty");
    bool progress = false;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (res.x(d + j) > kRankTolerance) {
        settled[static_cast<std::size_t>(open[static_cast<std::size_t>(j)])] = true;
        progress = true;
      }
    }
    if (!progress) break;
  }

  std::vector<bool> promote(system.constraints().size(), false);
  bool any = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (settled[static_cast<std::size_t>(i)]) continue;
    promote[poly.row_source[static_cast<std::size_t>(i)]] = true;
    any = true;
  }
  if (!any) return system;
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < system.constraints().size(); ++i) {
    const auto& c = system.constraints()[i];
    out.push_back(promote[i] ? LinearConstraint(c.terms(), Relation::EQ, c.rhs()) : c);
  }
  return ConstraintSystem(system.space(), std::move(out), system.anchors());
}

WalkState ball_walk_step(const ReducedPolytope& poly, WalkState state, Rng& rng, bool adapt) {
  const auto d = static_cast<Eigen::Index>(poly.dimension());
  bool accepted = false;
  if (d > 0) {
    Eigen::VectorXd dir(d);
    for (Eigen::Index i = 0; i < d; ++i) dir(i) = rng.normal();
    const double len = std::pow(rng.uniform_positive(), 1.0 / static_cast<double>(d)) * state.radius;
    Eigen::VectorXd proposal = state.point + (len / dir.norm()) * dir;
    if (membership(poly, proposal)) {
      state.point = std::move(proposal);
      accepted = true;
    }
  }
  if (accepted) {
    ++state.success_streak;
    state.failure_streak = 0;
    if (adapt && state.success_streak == 2) {
      state.radius *= 2.0;
      state.success_streak = 0;
    }
  } else {
    ++state.failure_streak;
    state.success_streak = 0;
    if (adapt && state.failure_streak == 2) {
      if (state.radius * 0.5 >= std::numeric_limits<double>::min()) state.radius *= 0.5;
      state.failure_streak = 0;
    }
  }
  return state;
}

Eigen::VectorXd ball_walk_run(const ReducedPolytope& poly, const Eigen::VectorXd& start,
                              const WalkOptions& options, Rng& rng, const WalkObserver& observer) {
  if (!(options.initial_radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "initial radius must be positive");
  if (!membership(poly, start)) throw Error(ErrorKind::InfeasibleStart, "walk start is outside the polytope");
  if (poly.dimension() == 0) return start;

  std::size_t adaptive_steps = options.steps;
  if (options.mode == RadiusMode::fixed_after_burn_in)
    adaptive_steps = static_cast<std::size_t>(std::floor(options.burn_in_fraction * static_cast<double>(options.steps)));

  WalkState state{start, options.initial_radius, 0, 0};
  for (std::size_t step = 0; step < options.steps; ++step) {
    state = ball_walk_step(poly, std::move(state), rng, step < adaptive_steps);
    if (observer) observer(step, state);
  }
  return state.point;
}

}  // namespace prefdist
