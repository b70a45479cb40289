#pragma once
// Reference implementations used only by the tests. Each one solves the same
// problem as a library routine by a different (slow, simple) method.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// ---- complete distance on three outcomes by grid integration ----------------
// p runs over a midpoint grid of the 2-simplex; for each p the conflicting part
// of the q-triangle is measured exactly by clipping the triangle with the two
// half-planes <q,u1> > <p,u1> and <q,u2> > <p,u2>.

using Pt = std::array<double, 2>;  // (q1, q2); q0 = 1 - q1 - q2

inline double area(const std::vector<Pt>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % poly.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return std::abs(s) / 2.0;
}

// keep the part where c0 + c1*x + c2*y >= 0
inline std::vector<Pt> clip(const std::vector<Pt>& poly, double c0, double c1, double c2) {
  std::vector<Pt> out;
  const auto f = [&](const Pt& p) { return c0 + c1 * p[0] + c2 * p[1]; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % poly.size()];
    const double fa = f(a), fb = f(b);
    if (fa >= 0) out.push_back(a);
    if ((fa >= 0) != (fb >= 0)) {
      const double t = fa / (fa - fb);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

// value of <q,u> - c as affine function of (q1,q2): (u0 - c) + (u1-u0) q1 + (u2-u0) q2
inline double conflict_area(const std::array<double, 3>& u1, const std::array<double, 3>& u2, double c1, double c2) {
  const std::vector<Pt> tri{{0, 0}, {1, 0}, {0, 1}};
  const auto above = [&](const std::vector<Pt>& poly, const std::array<double, 3>& u, double c, double sign) {
    return clip(poly, sign * (u[0] - c), sign * (u[1] - u[0]), sign * (u[2] - u[0]));
  };
  // region where one says "better" and the other says "worse"; ties have measure zero
  const double a = area(above(above(tri, u1, c1, 1), u2, c2, -1));
  const double b = area(above(above(tri, u1, c1, -1), u2, c2, 1));
  return (a + b) / 0.5;
}

inline double complete_distance_n3(const std::array<double, 3>& u1, const std::array<double, 3>& u2, int cells = 400) {
  double total = 0.0;
  std::size_t count = 0;
  const double h = 1.0 / cells;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; i + j < cells; ++j) {
      // the upright cell's centroid and, when present, the inverted one's
      for (int flip = 0; flip < 2; ++flip) {
        if (flip && i + j + 1 >= cells) continue;
        const double p1 = flip ? (i + 2.0 / 3.0) * h : (i + 1.0 / 3.0) * h;
        const double p2 = flip ? (j + 2.0 / 3.0) * h : (j + 1.0 / 3.0) * h;
        const double p0 = 1.0 - p1 - p2;
        const double c1 = p0 * u1[0] + p1 * u1[1] + p2 * u1[2];
        const double c2 = p0 * u2[0] + p1 * u2[1] + p2 * u2[2];
        total += conflict_area(u1, u2, c1, c2);
        ++count;
      }
    }
  return total / static_cast<double>(count);
}

// ---- uniform sampling of simple bodies without a random walk ---------------

// Dirichlet(1,...,1) through normalized exponentials.
inline std::vector<double> dirichlet(std::size_t n, std::mt19937_64& g) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  double s = 0.0;
  for (auto& v : x) s += (v = e(g));
  for (auto& v : x) v /= s;
  return x;
}

// Uniform point of {0 = u_0 <= u_1 <= ... <= u_{n-1} = 1}: sorted uniforms.
inline std::vector<double> monotone_utility(std::size_t n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> u(n);
  u[0] = 0.0;
  u[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) u[i] = U(g);
  std::sort(u.begin() + 1, u.end() - 1);
  return u;
}

inline int sgn(double x) { return (x > 0) - (x < 0); }

// Plain Monte Carlo distance between two bodies sampled by the given samplers.
template <class SampleU>
double nested_distance(std::size_t n, SampleU sample_u, std::size_t outer, std::size_t inner, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::size_t hits = 0;
  for (std::size_t o = 0; o < outer; ++o) {
    const auto u1 = sample_u(g), u2 = sample_u(g);
    for (std::size_t i = 0; i < inner; ++i) {
      const auto p = dirichlet(n, g), q = dirichlet(n, g);
      double d1 = 0, d2 = 0;
      for (std::size_t t = 0; t < n; ++t) {
        d1 += (q[t] - p[t]) * u1[t];
        d2 += (q[t] - p[t]) * u2[t];
      }
      hits += sgn(d1) != sgn(d2);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(outer * inner);
}

// ---- LP by vertex enumeration ---------------------------------------------
// maximize c.x subject to A x <= b; small dense problems only.
struct VertexLp {
  bool feasible = false;
  bool bounded = true;
  double value = -std::numeric_limits<double>::infinity();
};

inline bool solve_square(std::vector<std::vector<double>> M, std::vector<double> r, std::vector<double>& x) {
  const std::size_t d = r.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < d; ++i)
      if (std::abs(M[i][c]) > std::abs(M[p][c])) p = i;
    if (std::abs(M[p][c]) < 1e-12) return false;
    std::swap(M[p], M[c]);
    std::swap(r[p], r[c]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c) continue;
      const double f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < d; ++j) M[i][j] -= f * M[c][j];
      r[i] -= f * r[c];
    }
  }
  x.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) x[i] = r[i] / M[i][i];
  return true;
}

// Only valid when the feasible set is a bounded polytope (so the optimum is at a vertex).
inline VertexLp vertex_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b) {
  const std::size_t d = c.size(), m = A.size();
  VertexLp out;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec;
  rec = [&](std::size_t depth, std::size_t from) {
    if (depth == d) {
      std::vector<std::vector<double>> M;
      std::vector<double> r;
      for (std::size_t i : pick) {
        M.push_back(A[i]);
        r.push_back(b[i]);
      }
      std::vector<double> x;
      if (!solve_square(M, r, x)) return;
      for (std::size_t i = 0; i < m; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < d; ++j) s += A[i][j] * x[j];
        if (s > b[i] + 1e-9) return;
      }
      double v = 0;
      for (std::size_t j = 0; j < d; ++j) v += c[j] * x[j];
      out.feasible = true;
      out.value = std::max(out.value, v);
      return;
    }
    for (std::size_t i = from; i < m; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return out;
}

// ---- average linkage recomputed from scratch at every step ------------------
struct NaiveMerge {
  std::size_t left, right;
  double height;
  std::size_t size;
};

// Clusters are kept ordered by their smallest leaf; "left" is the cluster whose
// smallest leaf is smaller. Node numbering: leaves 0..k-1, merge t is node k+t.
inline std::vector<NaiveMerge> naive_average_linkage(const std::vector<std::vector<double>>& D) {
  const std::size_t k = D.size();
  struct Cluster {
    std::vector<std::size_t> members;
    std::size_t node;
  };
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < k; ++i) clusters.push_back({{i}, i});
  std::vector<NaiveMerge> out;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double s = 0;
        for (std::size_t a : clusters[i].members)
          for (std::size_t b : clusters[j].members) s += D[a][b];
        const double avg = s / static_cast<double>(clusters[i].members.size() * clusters[j].members.size());
        if (avg < best) {
          best = avg;
          bi = i;
          bj = j;
        }
      }
    Cluster merged{clusters[bi].members, k + out.size()};
    merged.members.insert(merged.members.end(), clusters[bj].members.begin(), clusters[bj].members.end());
    out.push_back({clusters[bi].node, clusters[bj].node, best, merged.members.size()});
    clusters[bi] = merged;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return out;
}

// ---- certainty distance straight from preference relations ------------------
// ranks: larger is better; counts ordered pairs (x,y) where the two relations disagree.
inline double pairwise_disagreement(const std::vector<int>& r1, const std::vector<int>& r2) {
  const std::size_t n = r1.size();
  std::size_t bad = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const int a = (r1[y] > r1[x]) - (r1[y] < r1[x]);
      const int b = (r2[y] > r2[x]) - (r2[y] < r2[x]);
      bad += a != b;
    }
  return static_cast<double>(bad) / static_cast<double>(n * n);
}

}  // namespace oracle
