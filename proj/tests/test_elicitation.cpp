#include "doctest.h"
#include "prefdist/elicitation.hpp"
#include "prefdist/lp.hpp"
#include "prefdist/synth.hpp"

using namespace prefdist;

TEST_SUITE("elicitation") {
TEST_CASE("answers are validated and clamped") {
  CHECK_THROWS_AS(make_answer(5, 1, 0.5, 3), Error);
  CHECK_THROWS_AS(make_answer(1, 5, 1.5, 3), Error);
  const auto a = make_answer(1, 5, 0.5, 7);
  CHECK(a.clamped);
  CHECK(a.ce == 5);
}

TEST_CASE("discretization snaps to the nearest grid point") {
  const Grid g{0, 36, 0.125};
  const auto on = discretize(4.375, g);
  CHECK(on.index == 35);
  CHECK_FALSE(on.off_grid);
  const auto off = discretize(4.33, g);
  CHECK(off.snapped == 4.375);
  CHECK(off.off_grid);
  CHECK_THROWS_AS(discretize(40, g), Error);
}

TEST_CASE("certainty equivalent becomes one equality") {
  const Grid g{0, 36, 0.125};
  const auto c = ce_to_constraint(make_answer(1, 10, 0.5, 4.375), g);
  CHECK(c.relation() == Relation::EQ);
  REQUIRE(c.terms().size() == 3);
  std::vector<double> u(289);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = g.value_at(i) / 36.0;
  CHECK_FALSE(c.satisfied_by(u, 1e-9));
  const auto lin = ce_to_constraint(make_answer(1, 10, 0.5, 5.5), g);
  CHECK(lin.satisfied_by(u, 1e-12));
  CHECK_THROWS_AS(ce_to_constraint(make_answer(3, 3.01, 0.5, 3), g), Error);
}

TEST_CASE("base system counts") {
  const OutcomeSpace s(Grid{});
  CHECK(monotonicity_constraints(s).size() == 288);
  CHECK(normalization_constraints(s).size() == 2 + 2 * 289);
  const auto base = base_system(s);
  CHECK(base.equality_count() == 2);
}

TEST_CASE("greedy drops a contradiction and keeps the rest") {
  const OutcomeSpace space(Grid{});
  const auto base = base_system(space);
  std::vector<LinearConstraint> eqs{ce_to_constraint(make_answer(1, 10, 0.5, 5.5), Grid{}),
                                    ce_to_constraint(make_answer(0, 36, 0.5, 36), Grid{}),
                                    ce_to_constraint(make_answer(2, 10, 0.5, 6), Grid{})};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng r(seed);
    const auto sel = greedy_consistent_subset(eqs, base, r);
    REQUIRE(sel.dropped.size() == 1);
    CHECK(sel.dropped[0] == 1);
    CHECK(sel.kept.size() == 2);
  }
}

TEST_CASE("subject polytope report") {
  const OutcomeSpace space(Grid{0, 12, 0.5});
  Subject s{"x", {make_answer(0, 12, 0.5, 6), make_answer(0, 6, 0.5, 3)}};
  Rng r(2);
  const auto sp = build_subject_polytope(s, space, r);
  CHECK(sp.report.kept == 2);
  CHECK(sp.report.equalities == 4);
  CHECK(sp.report.dimension == 25 - 4);
  CHECK(sp.report.inradius > 0);
  const Eigen::VectorXd u = sp.polytope.utility(sp.center.center);
  CHECK(sp.system.satisfied_by(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())), 1e-9));
}

TEST_CASE("vacuous subject") {
  const OutcomeSpace space(Grid{0, 5, 1});
  Rng r(1);
  const auto sp = build_subject_polytope(Subject{"v", {}}, space, r);
  CHECK(sp.report.answers == 0);
  CHECK(sp.polytope.dimension() == 4);
}

TEST_CASE("additive cone over two attributes") {
  AdditiveCone cone({{0.0, 1.0}, {0.0, 0.5, 1.0}});
  CHECK(cone.outcome_count() == 6);
  CHECK(cone.weights().equality_count() == 1);
  const auto lv = cone.levels(5);
  CHECK(lv[0] == 1);
  CHECK(lv[1] == 2);
  const std::vector<double> w{0.3, 0.7};
  const UtilityVector u = cone.utilities(w);
  CHECK(u[5] == doctest::Approx(1.0));
  // prefer the outcome that is best on attribute 1 over the one best on attribute 0
  const std::size_t best0 = 3, best1 = 2;  // levels (1,0) and (0,2)
  REQUIRE(cone.levels(best0) == std::vector<std::size_t>{1, 0});
  REQUIRE(cone.levels(best1) == std::vector<std::size_t>{0, 2});
  CHECK(cone.add_preference(Prospect::degenerate(6, best0), Prospect::degenerate(6, best1)));
  const auto p = cone.polytope();
  CHECK(p.utility_dimension() == 6);
  CHECK(p.dimension() == 1);
  const Eigen::VectorXd uu = p.utility(chebyshev_center(p).center);
  CHECK(uu(best0) <= uu(best1) + 1e-12);
  CHECK_FALSE(cone.add_preference(Prospect::degenerate(6, 0), Prospect::degenerate(6, 0)));
}

TEST_CASE("noise-free linear subject keeps all answers") {
  SynthOptions o;
  o.count = 1;
  o.seed = 4;
  const auto subjects = synthesize(o);
  Rng r(1);
  const auto sp = build_subject_polytope(subjects[0].averaged(), OutcomeSpace(Grid{}), r);
  CHECK(sp.report.answers == 42);
  CHECK(sp.report.kept == 42);
  CHECK(sp.report.equalities == 44);
  CHECK(sp.report.inequalities >= 288);
}
}
