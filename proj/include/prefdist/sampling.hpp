#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prefdist/model.hpp"
#include "prefdist/rng.hpp"

namespace prefdist {

enum class Execution { serial, parallel };

/// Default number of prospect pairs per complete-order distance.
inline constexpr std::size_t kDefaultInnerSamples = 1000;

/// Prospect pairs are drawn in fixed blocks; block b always uses
/// `rng.substream(b)`, so serial and OpenMP execution see the same draws.
inline constexpr std::size_t kPairBlock = 256;

/// Spacings of `draws` in [0,1] after sorting (the order-statistics route to
/// a uniform point of the simplex). Returns draws.size() + 1 values.
std::vector<double> spacings_from_draws(std::vector<double> draws);

/// Uniform random point of the (n-1)-simplex.
Prospect simplex_sample(std::size_t n, Rng& rng);

/// Writes a uniform simplex point into `out` (size n); no validation.
void simplex_sample_into(std::span<double> out, Rng& rng, std::vector<double>& scratch);

/// Monte Carlo estimate of the probability that a uniformly random pair of
/// prospects is ranked differently by u1 and u2.
DistanceEstimate mc_distance_complete(const UtilityVector& u1, const UtilityVector& u2, std::size_t k,
                                      const Rng& rng, Execution exec = Execution::parallel);

/// A frozen sample of k prospect pairs, stored as differences b - a. Drawn
/// with exactly the same stream layout as mc_distance_complete, so counting
/// conflicts over it reproduces that estimator bit for bit.
class ProspectPairSample {
 public:
  ProspectPairSample(std::size_t n, std::size_t k, const Rng& rng, Execution exec = Execution::parallel);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return k_; }
  std::span<const double> difference(std::size_t i) const { return {diffs_.data() + i * n_, n_}; }

  /// <b_i - a_i, u> for every pair.
  std::vector<double> expected_differences(std::span<const double> u) const;

  /// Number of pairs on which u1 and u2 disagree.
  std::size_t count_conflicts(std::span<const double> u1, std::span<const double> u2) const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<double> diffs_;
};

/// Bernoulli plug-in standard error sqrt(m(1-m)/k).
double bernoulli_std_error(double mean, std::size_t k);

}  // namespace prefdist
