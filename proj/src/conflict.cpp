#include "prefdist/conflict.hpp"

namespace prefdist {

namespace {

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

int conflict(const UtilityVector& u1, const UtilityVector& u2, const Prospect& a, const Prospect& b) {
  check_same(u1.size(), u2.size(), "utility dimensions");
  check_same(u1.size(), a.size(), "prospect dimension");
  check_same(u1.size(), b.size(), "prospect dimension");
  const double d1 = expected_difference(a.values(), b.values(), u1.values());
  const double d2 = expected_difference(a.values(), b.values(), u2.values());
  return conflict_from_differences(d1, d2);
}

double certainty_distance(const UtilityVector& ranks1, const UtilityVector& ranks2) {
  check_same(ranks1.size(), ranks2.size(), "ranking sizes");
  const std::size_t n = ranks1.size();
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "empty ranking");
  // With degenerate prospects at i and j the expected-utility difference is
  // u(j) - u(i).
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      hits += conflict_from_differences(ranks1[j] - ranks1[i], ranks2[j] - ranks2[i]);
  return static_cast<double>(hits) / static_cast<double>(n * n);
}

double discrete_distance(const UtilityVector& u1, const UtilityVector& u2,
                         std::span<const Prospect> alternatives) {
  if (alternatives.empty()) throw Error(ErrorKind::EmptyAlternatives, "alternative set is empty");
  check_same(u1.size(), u2.size(), "utility dimensions");
  for (const auto& p : alternatives) check_same(u1.size(), p.size(), "prospect dimension");

  const std::size_t k = alternatives.size();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double d1 = expected_difference(alternatives[i].values(), alternatives[j].values(), u1.values());
      const double d2 = expected_difference(alternatives[i].values(), alternatives[j].values(), u2.values());
      hits += conflict_from_differences(d1, d2);
    }
  return static_cast<double>(hits) / static_cast<double>(k * k);
}

bool strategically_equivalent(const UtilityVector& u1, const UtilityVector& u2,
                              std::span<const Prospect> alternatives) {
  return discrete_distance(u1, u2, alternatives) == 0.0;
}

}  // namespace prefdist
