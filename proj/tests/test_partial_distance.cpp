#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "prefdist/elicitation.hpp"
#include "prefdist/partial_distance.hpp"

using namespace prefdist;

namespace {
EstimatorConfig small_config(std::uint64_t seed) {
  EstimatorConfig c;
  c.outer_samples = 100;
  c.inner_samples = 200;
  c.walk_steps = 200;
  c.seed = seed;
  return c;
}

ConstraintSystem pinned(std::size_t n, const std::vector<double>& u) {
  std::vector<LinearConstraint> eqs;
  for (std::size_t i = 1; i + 1 < n; ++i) eqs.emplace_back(std::vector<Term>{{i, 1.0}}, Relation::EQ, u[i]);
  return ConstraintSystem(OutcomeSpace(n), eqs, Anchors{0, n - 1});
}
}  // namespace

TEST_SUITE("partial_distance") {
TEST_CASE("configuration validation") {
  EstimatorConfig c;
  c.outer_samples = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = EstimatorConfig{};
  c.initial_radius = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK_NOTHROW(EstimatorConfig{}.validate());
}

TEST_CASE("pinned bodies reproduce the complete estimator") {
  const std::vector<double> u1{0, 0.3, 0.35, 1}, u2{0, 0.8, 0.9, 1};
  const auto a = reduce(pinned(4, u1)), b = reduce(pinned(4, u2));
  auto cfg = small_config(21);
  const auto e = estimate_partial_distance(a, b, cfg);
  const auto c = mc_distance_complete(UtilityVector(u1), UtilityVector(u2), cfg.inner_samples, inner_stream(cfg.seed));
  CHECK(e.mean == c.mean);
}

TEST_CASE("symmetry and determinism") {
  const auto vac = reduce(base_system(OutcomeSpace(5)));
  const ConstraintSystem s(OutcomeSpace(5), {LinearConstraint({{2, 1.0}}, Relation::LE, 0.2)}, Anchors{0, 4});
  const auto mono = monotonicity_constraints(OutcomeSpace(5));
  const auto low = reduce(s.with(mono));
  const auto cfg = small_config(3);
  const auto ab = estimate_partial_distance(vac, low, cfg);
  const auto ba = estimate_partial_distance(low, vac, cfg);
  CHECK(ab.mean == ba.mean);
  CHECK(ab.std_error == ba.std_error);
  const auto again = estimate_partial_distance(vac, low, cfg);
  CHECK(again.mean == ab.mean);
  const auto serial = estimate_partial_distance(vac, low, cfg, Execution::serial);
  CHECK(serial.mean == ab.mean);
  CHECK(serial.std_error == ab.std_error);
}

TEST_CASE("vacuous body against order-statistic sampling") {
  const std::size_t n = 4;
  const auto vac = reduce(base_system(OutcomeSpace(n)));
  EstimatorConfig cfg;
  cfg.outer_samples = 2000;
  cfg.inner_samples = 200;
  cfg.walk_steps = 300;
  cfg.seed = 77;
  cfg.radius_mode = RadiusMode::fixed_after_burn_in;
  const auto e = estimate_partial_distance(vac, vac, cfg);
  const double ref = oracle::nested_distance(
      n, [&](std::mt19937_64& g) { return oracle::monotone_utility(n, g); }, 4000, 400, 5);
  // reference itself carries ~0.002 of Monte Carlo error
  CHECK(std::abs(e.mean - ref) < 4 * e.std_error + 0.006);
  CHECK(e.mean > 3 * e.std_error);
}

TEST_CASE("matrix over named bodies") {
  const auto vac = reduce(base_system(OutcomeSpace(4)));
  const auto pin = reduce(pinned(4, {0, 0.5, 0.6, 1}));
  const auto cfg = small_config(9);
  std::vector<NamedPolytope> named{{"vac", &vac}, {"pin", &pin}, {"vac2", &vac}};
  std::size_t calls = 0;
  const auto m = distance_matrix(named, cfg, Execution::parallel, [&](std::size_t, std::size_t total) {
    ++calls;
    CHECK(total == 6);
  });
  CHECK(calls == 6);
  CHECK(m.mean(0, 0) == 0.0);
  CHECK(m.self_distance(0).mean > 0.0);
  CHECK(m.self_distance(1).mean == 0.0);
  CHECK(m.mean(0, 1) == m.mean(1, 0));
  const auto serial = distance_matrix(named, cfg, Execution::serial);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(serial.mean(i, j) == m.mean(i, j));
  // the map overload orders subjects by id
  const std::map<std::string, ReducedPolytope> by_id{{"b", vac}, {"a", pin}};
  const auto mm = distance_matrix(by_id, cfg);
  CHECK(mm.ids() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("vertex start mode") {
  const auto vac = reduce(base_system(OutcomeSpace(4)));
  auto cfg = small_config(4);
  cfg.start_mode = StartMode::random_vertex;
  const auto e = estimate_partial_distance(vac, vac, cfg);
  CHECK(e.mean > 0.0);
  CHECK(e.mean < 0.5);
}

TEST_CASE("mismatched outcome spaces are rejected") {
  const auto a = reduce(base_system(OutcomeSpace(4)));
  const auto b = reduce(base_system(OutcomeSpace(5)));
  CHECK_THROWS_AS(estimate_partial_distance(a, b, small_config(1)), Error);
}
}
