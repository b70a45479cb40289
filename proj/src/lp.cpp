#include "prefdist/lp.hpp"

#include <cmath>
#include <limits>

#include "prefdist/error.hpp"

namespace prefdist {

namespace {

// Row-major tableau for max c.x, Tx = rhs, x >= 0, with an explicit basis.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  double* row(std::size_t i) { return a_.data() + i * cols_; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<double>& rhs() { return rhs_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& reduced, double& objective) {
    double* pr = row(r);
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j < cols_; ++j) pr[j] *= inv;
    rhs_[r] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* pi = row(i);
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double f = reduced[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced[j] -= f * pr[j];
      reduced[c] = 0.0;
      objective += f * rhs_[r];
    }
    basis_[r] = c;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { Optimal, Unbounded };

// Maximizes with reduced costs `reduced` (cost - c_B B^-1 A). Columns with
// allowed[j] == false never enter.
PhaseResult run_phase(Tableau& t, std::vector<double>& reduced, double& objective, const std::vector<bool>& allowed,
                      const LpOptions& opt, std::size_t& pivots) {
  bool bland = false;
  std::size_t degenerate_streak = 0;
  const std::size_t max_pivots = 50 * (t.rows() + t.cols()) + 1000;
  for (;;) {
    std::size_t enter = t.cols();
    double best = opt.pivot_tolerance;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || reduced[j] <= opt.pivot_tolerance) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (reduced[j] > best) {
        best = reduced[j];
        enter = j;
      }
    }
    if (enter == t.cols()) return PhaseResult::Optimal;

    std::size_t leave = t.rows();
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double r = std::max(0.0, t.rhs()[i]) / a;
      if (r < ratio - 1e-12 || (std::abs(r - ratio) <= 1e-12 && leave < t.rows() && t.basis()[i] < t.basis()[leave])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave == t.rows()) return PhaseResult::Unbounded;

    if (ratio <= 1e-12) {
      if (++degenerate_streak >= opt.degenerate_switch) bland = true;
    } else {
      degenerate_streak = 0;
    }
    t.pivot(leave, enter, reduced, objective);
    if (++pivots > max_pivots) {
      // Bland's rule terminates; this only guards against numerical drift.
      if (bland) throw Error(ErrorKind::InvalidArgument, "simplex failed to terminate");
      bland = true;
    }
  }
}

}  // namespace

LpResult lp_solve(const Eigen::VectorXd& objective, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const LpOptions& options) {
  return lp_solve(objective, A, b, std::vector<bool>(static_cast<std::size_t>(A.cols()), false), options);
}

LpResult lp_solve(const Eigen::VectorXd& objective, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const std::vector<bool>& nonnegative, const LpOptions& opt) {
  const auto m = static_cast<std::size_t>(A.rows());
  const auto d = static_cast<std::size_t>(A.cols());
  if (static_cast<std::size_t>(b.size()) != m || static_cast<std::size_t>(objective.size()) != d || nonnegative.size() != d)
    throw Error(ErrorKind::DimensionMismatch, "lp_solve: inconsistent dimensions");

  // Column layout: x+ (d), x- for free variables, slacks (m), artificials.
  std::vector<std::size_t> neg_col(d, 0);
  std::size_t cols = d;
  for (std::size_t j = 0; j < d; ++j)
    if (!nonnegative[j]) neg_col[j] = cols++;
  const std::size_t slack0 = cols;
  cols += m;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (b(static_cast<Eigen::Index>(i)) < 0.0) ++artificials;
  const std::size_t art0 = cols;
  cols += artificials;

  Tableau t(m, cols);
  std::vector<bool> is_artificial(cols, false);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double sign = b(ii) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = sign * A(ii, static_cast<Eigen::Index>(j));
      t.at(i, j) = v;
      if (!nonnegative[j]) t.at(i, neg_col[j]) = -v;
    }
    t.at(i, slack0 + i) = sign;
    t.rhs()[i] = sign * b(ii);
    if (sign < 0.0) {
      t.at(i, next_art) = 1.0;
      is_artificial[next_art] = true;
      t.basis()[i] = next_art++;
    } else {
      t.basis()[i] = slack0 + i;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);

  if (artificials > 0) {
    // Phase 1: maximize -sum(artificials).
    std::vector<double> reduced(cols, 0.0);
    double obj = 0.0;
    for (std::size_t j = 0; j < cols; ++j) reduced[j] = is_artificial[j] ? -1.0 : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_artificial[t.basis()[i]]) continue;
      for (std::size_t j = 0; j < cols; ++j) reduced[j] += t.at(i, j);
      obj -= t.rhs()[i];
    }
    run_phase(t, reduced, obj, allowed, opt, result.pivots);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (-obj > opt.feasibility_tolerance * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_artificial[t.basis()[i]]) continue;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > opt.pivot_tolerance) {
          double dummy = 0.0;
          std::vector<double> none(cols, 0.0);
          t.pivot(i, j, none, dummy);
          ++result.pivots;
          break;
        }
      }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    cost[j] = objective(static_cast<Eigen::Index>(j));
    if (!nonnegative[j]) cost[neg_col[j]] = -cost[j];
  }
  std::vector<double> reduced = cost;
  double obj = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = cost[t.basis()[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= cb * t.at(i, j);
    obj += cb * t.rhs()[i];
  }
  if (run_phase(t, reduced, obj, allowed, opt, result.pivots) == PhaseResult::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  std::vector<double> values(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) values[t.basis()[i]] = std::max(0.0, t.rhs()[i]);
  result.x.resize(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < d; ++j)
    result.x(static_cast<Eigen::Index>(j)) = values[j] - (nonnegative[j] ? 0.0 : values[neg_col[j]]);
  result.value = objective.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace prefdist
