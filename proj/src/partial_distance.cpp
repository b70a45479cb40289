#include "prefdist/partial_distance.hpp"

#include <cmath>

namespace prefdist {

namespace {

constexpr std::uint64_t kWalkStream = 1;
constexpr std::uint64_t kInnerStream = 2;
constexpr std::uint64_t kStartStream = 3;
constexpr std::uint64_t kPairStream = 4;

}  // namespace

void EstimatorConfig::validate() const {
  if (outer_samples < 1 || inner_samples < 1)
    throw Error(ErrorKind::InvalidArgument, "sample counts must be >= 1");
  if (!(initial_radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "initial radius must be positive");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "burn-in fraction must lie in [0,1]");
}

WalkTarget make_walk_target(const ReducedPolytope& poly, const EstimatorConfig& cfg) {
  WalkTarget t;
  t.polytope = &poly;
  if (cfg.start_mode == StartMode::random_vertex) {
    Rng rng = Rng(cfg.seed).substream(kStartStream);
    t.start = random_vertex(poly, rng);
  } else {
    t.start = chebyshev_center(poly).center;
  }
  return t;
}

DistanceEstimate estimate_partial_distance(const ReducedPolytope& a, const ReducedPolytope& b,
                                           const EstimatorConfig& cfg, Execution exec) {
  return estimate_partial_distance(make_walk_target(a, cfg), make_walk_target(b, cfg), cfg, exec);
}

DistanceEstimate estimate_partial_distance(const WalkTarget& a, const WalkTarget& b, const EstimatorConfig& cfg,
                                           Execution exec) {
  cfg.validate();
  if (!a.polytope || !b.polytope) throw Error(ErrorKind::InvalidArgument, "walk target without polytope");
  const std::size_t n = a.polytope->utility_dimension();
  if (n != b.polytope->utility_dimension())
    throw Error(ErrorKind::SpaceMismatch, "polytopes live in different outcome spaces");
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "empty outcome space");

  // Walk streams are assigned by polytope content, not argument position, so
  // swapping the arguments reproduces every sample.
  const bool swapped = compare(*a.polytope, *b.polytope) > 0;
  const WalkTarget& first = swapped ? b : a;
  const WalkTarget& second = swapped ? a : b;

  const Rng root(cfg.seed);
  const ProspectPairSample pairs(n, cfg.inner_samples, inner_stream(cfg.seed), exec);
  const Rng walk_root = root.substream(kWalkStream);
  const WalkOptions walk = cfg.walk_options();

  std::vector<std::size_t> hits(cfg.outer_samples, 0);
  auto outer = [&](std::size_t i) {
    const Rng iteration = walk_root.substream(i);
    Rng r1 = iteration.substream(0);
    Rng r2 = iteration.substream(1);
    const Eigen::VectorXd y1 = ball_walk_run(*first.polytope, first.start, walk, r1);
    const Eigen::VectorXd y2 = ball_walk_run(*second.polytope, second.start, walk, r2);
    const Eigen::VectorXd u1 = first.polytope->utility(y1);
    const Eigen::VectorXd u2 = second.polytope->utility(y2);
    hits[i] = pairs.count_conflicts({u1.data(), n}, {u2.data(), n});
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(cfg.outer_samples); ++i) outer(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < cfg.outer_samples; ++i) outer(i);
  }

  // Integer totals keep the mean exact: with identical counts in every outer
  // sample it equals the single-pair estimate bit for bit.
  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  const double k = static_cast<double>(cfg.inner_samples);
  const double outer_n = static_cast<double>(cfg.outer_samples);
  DistanceEstimate e;
  e.mean = static_cast<double>(total) / (outer_n * k);
  e.outer_samples = cfg.outer_samples;
  e.inner_samples = cfg.inner_samples;

  double outer_var = 0.0;
  if (cfg.outer_samples > 1) {
    for (std::size_t h : hits) {
      const double dev = static_cast<double>(h) / k - e.mean;
      outer_var += dev * dev;
    }
    outer_var /= outer_n - 1.0;
  }
  const double inner_var = std::max(0.0, e.mean * (1.0 - e.mean)) / k;
  e.std_error = std::sqrt(outer_var / outer_n + inner_var);
  return e;
}

Rng inner_stream(std::uint64_t seed) { return Rng(seed).substream(kInnerStream); }

std::uint64_t pair_seed(std::uint64_t seed, std::uint64_t index) {
  return Rng(seed).substream(kPairStream).substream(index).next_u64();
}

DissimilarityMatrix distance_matrix(const std::map<std::string, ReducedPolytope>& polytopes,
                                    const EstimatorConfig& cfg, Execution exec) {
  std::vector<NamedPolytope> list;
  for (const auto& [id, poly] : polytopes) list.push_back({id, &poly});
  return distance_matrix(list, cfg, exec);
}

DissimilarityMatrix distance_matrix(const std::vector<NamedPolytope>& polytopes, const EstimatorConfig& cfg,
                                    Execution exec, const ProgressFn& progress) {
  cfg.validate();
  const std::size_t k = polytopes.size();
  if (k < 2) throw Error(ErrorKind::TooFewSubjects, "distance matrix needs at least two subjects");
  std::vector<std::string> ids;
  for (const auto& p : polytopes) ids.push_back(p.id);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (ids[i] == ids[j]) throw Error(ErrorKind::InvalidArgument, "duplicate subject id " + ids[i]);

  std::vector<WalkTarget> targets;
  targets.reserve(k);
  for (const auto& p : polytopes) targets.push_back(make_walk_target(*p.polytope, cfg));

  struct Item {
    std::size_t i, j;
  };
  std::vector<Item> items;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) items.push_back({i, j});
  std::vector<DistanceEstimate> results(items.size());

  std::size_t done = 0;
  auto run = [&](std::size_t t) {
    const Item it = items[t];
    EstimatorConfig item_cfg = cfg;
    item_cfg.seed = pair_seed(cfg.seed, it.i * k + it.j);
    results[t] = estimate_partial_distance(targets[it.i], targets[it.j], item_cfg, Execution::serial);
    if (progress) {
#pragma omp critical(prefdist_progress)
      progress(++done, items.size());
    }
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(items.size()); ++t) run(static_cast<std::size_t>(t));
  } else {
    for (std::size_t t = 0; t < items.size(); ++t) run(t);
  }

  DissimilarityMatrix m(std::move(ids));
  for (std::size_t t = 0; t < items.size(); ++t) {
    const Item it = items[t];
    if (it.i == it.j)
      m.set_self_distance(it.i, results[t]);
    else
      m.set(it.i, it.j, results[t]);
  }
  return m;
}

}  // namespace prefdist
