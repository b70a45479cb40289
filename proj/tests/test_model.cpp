#include <cmath>

#include "doctest.h"
#include "prefdist/model.hpp"

using namespace prefdist;

TEST_SUITE("model") {
TEST_CASE("grid of the survival study has 289 outcomes") {
  Grid g;
  CHECK(g.size() == 289);
  CHECK(OutcomeSpace(g).size() == 289);
  CHECK(g.value_at(288) == 36.0);
  CHECK(Grid{0, 12, 0.125}.size() == 97);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(OutcomeSpace(Grid{0, 1, 0.3}), Error);
  CHECK_THROWS_AS(OutcomeSpace(Grid{1, 0, 0.5}), Error);
  CHECK_THROWS_AS(OutcomeSpace(std::size_t{0}), Error);
  CHECK_THROWS_AS(OutcomeSpace(3, Grid{0, 1, 0.25}), Error);
}

TEST_CASE("prospect validation") {
  const auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  CHECK(kind([] { Prospect::validate({0.5, 0.6, -0.1}); }) == ErrorKind::NegativeProbability);
  CHECK(kind([] { Prospect::validate({0.5, 0.6}); }) == ErrorKind::SumNotOne);
  CHECK(kind([] { Prospect::validate({0.5, 0.5}, 3); }) == ErrorKind::LengthMismatch);
  const Prospect p = Prospect::validate({0.25, 0.75 + 1e-12});
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
  const Prospect d = Prospect::degenerate(4, 2);
  CHECK(d[2] == 1.0);
  CHECK(d[0] == 0.0);
  CHECK_THROWS_AS(Prospect::degenerate(4, 4), Error);
}

TEST_CASE("utility vector rejects non-finite entries") {
  CHECK_THROWS_AS(UtilityVector(std::vector<double>{0.0, std::nan("")}), Error);
  CHECK_NOTHROW(UtilityVector({0.0, 1.0}));
}

TEST_CASE("expected difference") {
  const std::vector<double> a{1, 0, 0}, b{0, 0, 1}, u{0, 0.5, 1};
  CHECK(expected_difference(a, b, u) == 1.0);
  CHECK(expected_difference(b, a, u) == -1.0);
}

TEST_CASE("linear constraint normalizes terms") {
  const LinearConstraint c({{2, 1.0}, {0, -1.0}, {1, 0.0}}, Relation::LE, 0.0);
  REQUIRE(c.terms().size() == 2);
  CHECK(c.terms()[0].index == 0);
  CHECK_THROWS_AS(LinearConstraint({{1, 1.0}, {1, 2.0}}, Relation::EQ, 0.0), Error);
  CHECK_THROWS_AS(LinearConstraint({{1, 0.0}}, Relation::EQ, 0.0), Error);
  const auto m = LinearConstraint::merged({{1, 0.5}, {1, 0.5}, {2, -1.0}}, Relation::EQ, 0.0);
  REQUIRE(m.terms().size() == 2);
  CHECK(m.terms()[0].coeff == 1.0);
  const std::vector<double> u{0, 0.5, 0.5};
  CHECK(m.satisfied_by(u, 1e-12));
  CHECK_THROWS_AS(c.check_indices(2), Error);
}

TEST_CASE("constraint system adds anchors and box rows") {
  const ConstraintSystem s(OutcomeSpace(3), {}, Anchors{0, 2});
  CHECK(s.equality_count() == 2);
  CHECK(s.inequality_count() == 6);
  const std::vector<double> ok{0, 0.3, 1}, bad{0, 1.3, 1};
  CHECK(s.satisfied_by(ok, 1e-12));
  CHECK_FALSE(s.satisfied_by(bad, 1e-12));
  // adding an existing row does not duplicate it
  const LinearConstraint dup({{1, 1.0}}, Relation::LE, 1.0);
  CHECK(s.with(std::span(&dup, 1)).inequality_count() == 6);
  CHECK_THROWS_AS(ConstraintSystem(OutcomeSpace(3), {}, Anchors{1, 1}), Error);
  CHECK_THROWS_AS(ConstraintSystem(OutcomeSpace(3), {LinearConstraint({{5, 1.0}}, Relation::LE, 0)}, std::nullopt),
                  Error);
}

TEST_CASE("dissimilarity matrix") {
  DissimilarityMatrix m({"a", "b", "c"});
  m.set(0, 2, {0.25, 0.01, 10, 10});
  CHECK(m.mean(2, 0) == 0.25);
  CHECK(m.mean(1, 1) == 0.0);
  CHECK_THROWS_AS(m.set(1, 1, {0.1, 0, 1, 1}), Error);
  CHECK_THROWS_AS(m.set(0, 1, {1.5, 0, 1, 1}), Error);
  m.set_self_distance(1, {0.05, 0.01, 4, 4});
  CHECK(m.self_distance(1).mean == 0.05);
}
}
