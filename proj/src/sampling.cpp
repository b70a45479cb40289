#include "prefdist/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "prefdist/conflict.hpp"

namespace prefdist {

std::vector<double> spacings_from_draws(std::vector<double> draws) {
  std::sort(draws.begin(), draws.end());
  std::vector<double> out(draws.size() + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    out[i] = draws[i] - prev;
    prev = draws[i];
  }
  out.back() = 1.0 - prev;
  return out;
}

void simplex_sample_into(std::span<double> out, Rng& rng, std::vector<double>& scratch) {
  const std::size_t n = out.size();
  scratch.resize(n - 1);
  for (auto& x : scratch) x = rng.uniform();
  std::sort(scratch.begin(), scratch.end());
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out[i] = scratch[i] - prev;
    prev = scratch[i];
  }
  out[n - 1] = 1.0 - prev;
}

Prospect simplex_sample(std::size_t n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "simplex dimension must be >= 1");
  std::vector<double> p(n), scratch;
  simplex_sample_into(p, rng, scratch);
  return Prospect::validate(std::move(p), n);
}

double bernoulli_std_error(double mean, std::size_t k) {
  if (k == 0) return 0.0;
  return std::sqrt(std::max(0.0, mean * (1.0 - mean)) / static_cast<double>(k));
}

namespace {

std::size_t block_count(std::size_t k) { return (k + kPairBlock - 1) / kPairBlock; }

// Draws pair i of block b: a then b, both from the block substream.
template <typename PairFn>
void for_each_pair_in_block(std::size_t n, std::size_t k, std::size_t block, const Rng& root, PairFn&& fn) {
  Rng rng = root.substream(block);
  std::vector<double> a(n), b(n), scratch;
  const std::size_t begin = block * kPairBlock;
  const std::size_t end = std::min(k, begin + kPairBlock);
  for (std::size_t i = begin; i < end; ++i) {
    simplex_sample_into(a, rng, scratch);
    simplex_sample_into(b, rng, scratch);
    fn(i, std::span<const double>(a), std::span<const double>(b));
  }
}

}  // namespace

DistanceEstimate mc_distance_complete(const UtilityVector& u1, const UtilityVector& u2, std::size_t k,
                                      const Rng& rng, Execution exec) {
  if (u1.size() != u2.size()) throw Error(ErrorKind::DimensionMismatch, "utility dimensions differ");
  if (u1.size() == 0) throw Error(ErrorKind::InvalidDimension, "empty utility vector");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "sample size must be >= 1");

  const std::size_t n = u1.size();
  const std::size_t blocks = block_count(k);
  std::vector<std::size_t> hits(blocks, 0);

  auto run_block = [&](std::size_t blk) {
    std::size_t h = 0;
    for_each_pair_in_block(n, k, blk, rng, [&](std::size_t, std::span<const double> a, std::span<const double> b) {
      h += conflict_from_differences(expected_difference(a, b, u1.values()), expected_difference(a, b, u2.values()));
    });
    hits[blk] = h;
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(blocks); ++blk) run_block(static_cast<std::size_t>(blk));
  } else {
    for (std::size_t blk = 0; blk < blocks; ++blk) run_block(blk);
  }

  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  DistanceEstimate e;
  e.mean = static_cast<double>(total) / static_cast<double>(k);
  e.std_error = bernoulli_std_error(e.mean, k);
  e.outer_samples = 1;
  e.inner_samples = k;
  return e;
}

ProspectPairSample::ProspectPairSample(std::size_t n, std::size_t k, const Rng& rng, Execution exec)
    : n_(n), k_(k), diffs_(n * k) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "simplex dimension must be >= 1");
  const std::size_t blocks = block_count(k);
  auto run_block = [&](std::size_t blk) {
    for_each_pair_in_block(n, k, blk, rng, [&](std::size_t i, std::span<const double> a, std::span<const double> b) {
      double* d = diffs_.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) d[j] = b[j] - a[j];
    });
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(blocks); ++blk) run_block(static_cast<std::size_t>(blk));
  } else {
    for (std::size_t blk = 0; blk < blocks; ++blk) run_block(blk);
  }
}

std::vector<double> ProspectPairSample::expected_differences(std::span<const double> u) const {
  if (u.size() != n_) throw Error(ErrorKind::DimensionMismatch, "utility dimension does not match sample");
  std::vector<double> out(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    const double* d = diffs_.data() + i * n_;
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += d[j] * u[j];
    out[i] = s;
  }
  return out;
}

std::size_t ProspectPairSample::count_conflicts(std::span<const double> u1, std::span<const double> u2) const {
  const auto d1 = expected_differences(u1);
  const auto d2 = expected_differences(u2);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < k_; ++i) hits += conflict_from_differences(d1[i], d2[i]);
  return hits;
}

}  // namespace prefdist
