#pragma once

#include <span>
#include <vector>

#include "prefdist/model.hpp"

namespace prefdist {

/// Conflict between two expected-utility differences: 1 unless both are
/// strictly positive, both strictly negative, or both exactly zero.
/// Comparisons are exact.
inline int conflict_from_differences(double d1, double d2) noexcept {
  const int s1 = (d1 > 0.0) - (d1 < 0.0);
  const int s2 = (d2 > 0.0) - (d2 < 0.0);
  return s1 != s2 ? 1 : 0;
}

/// Conflict indicator for the prospect pair (a, b) under utilities u1, u2.
int conflict(const UtilityVector& u1, const UtilityVector& u2, const Prospect& a, const Prospect& b);

/// Distance between two rankings with ties on n outcomes, encoded as rank
/// values (equal values mean indifference). Averages the conflict indicator
/// over all n^2 ordered pairs of degenerate prospects.
double certainty_distance(const UtilityVector& ranks1, const UtilityVector& ranks2);

/// Average conflict over all |D|^2 ordered pairs of a finite alternative set.
double discrete_distance(const UtilityVector& u1, const UtilityVector& u2,
                         std::span<const Prospect> alternatives);

bool strategically_equivalent(const UtilityVector& u1, const UtilityVector& u2,
                              std::span<const Prospect> alternatives);

}  // namespace prefdist
