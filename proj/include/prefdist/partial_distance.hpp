#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "prefdist/model.hpp"
#include "prefdist/polytope.hpp"
#include "prefdist/sampling.hpp"

namespace prefdist {

enum class StartMode {
  chebyshev_center,  // fresh walks start at the center of the largest inscribed ball
  random_vertex,     // LP vertex for a random objective, fixed per polytope
};

struct EstimatorConfig {
  std::size_t outer_samples = 1000;  // utility-function pairs
  std::size_t inner_samples = kDefaultInnerSamples;  // prospect pairs per utility pair
  std::size_t walk_steps = 1000;
  double initial_radius = 1e-3;
  std::uint64_t seed = 0;
  RadiusMode radius_mode = RadiusMode::adaptive;
  double burn_in_fraction = 0.2;
  StartMode start_mode = StartMode::chebyshev_center;

  void validate() const;
  WalkOptions walk_options() const { return {walk_steps, initial_radius, radius_mode, burn_in_fraction}; }
};

/// A polytope together with the point its walks start from.
struct WalkTarget {
  const ReducedPolytope* polytope = nullptr;
  Eigen::VectorXd start;
};

/// Computes the walk start for `poly` as configured. Throws EmptyPolytope.
WalkTarget make_walk_target(const ReducedPolytope& poly, const EstimatorConfig& cfg);

/// Nested Monte Carlo estimate of the expected conflict probability between
/// uniformly random members of two polytopes of utility functions.
///
/// Outer sample i draws one endpoint of a fresh ball walk from each body and
/// counts conflicts over a common set of `inner_samples` prospect pairs. The
/// standard error combines the spread of the outer samples with the
/// Bernoulli bound for the shared inner sample.
DistanceEstimate estimate_partial_distance(const ReducedPolytope& a, const ReducedPolytope& b,
                                           const EstimatorConfig& cfg, Execution exec = Execution::parallel);

DistanceEstimate estimate_partial_distance(const WalkTarget& a, const WalkTarget& b, const EstimatorConfig& cfg,
                                           Execution exec = Execution::parallel);

/// Stream that supplies the shared inner prospect pairs for `seed`. With
/// single-point polytopes the estimator equals
/// mc_distance_complete(u1, u2, inner_samples, inner_stream(seed)).
Rng inner_stream(std::uint64_t seed);

/// Seed for pair `index` of a population run.
std::uint64_t pair_seed(std::uint64_t seed, std::uint64_t index);

/// All unordered pairs plus every self-distance. Pair (i, j), i < j, is item
/// index i*k + j and self-distance i is item i*k + i; each item runs with
/// `pair_seed(cfg.seed, item)`, so results do not depend on scheduling.
DissimilarityMatrix distance_matrix(const std::map<std::string, ReducedPolytope>& polytopes,
                                    const EstimatorConfig& cfg, Execution exec = Execution::parallel);

struct NamedPolytope {
  std::string id;
  const ReducedPolytope* polytope;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Same, preserving the caller's subject order.
DissimilarityMatrix distance_matrix(const std::vector<NamedPolytope>& polytopes, const EstimatorConfig& cfg,
                                    Execution exec = Execution::parallel, const ProgressFn& progress = {});

}  // namespace prefdist
