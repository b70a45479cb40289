#include "prefdist/clustering.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace prefdist {

Dendrogram average_linkage(const DissimilarityMatrix& matrix) {
  const std::size_t k = matrix.size();
  std::vector<std::vector<double>> dist(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) dist[i][j] = i == j ? 0.0 : matrix.mean(i, j);
  return average_linkage(matrix.ids(), dist);
}

Dendrogram average_linkage(const std::vector<std::string>& ids, const std::vector<std::vector<double>>& distances) {
  const std::size_t k = ids.size();
  if (k < 2) throw Error(ErrorKind::TooFewSubjects, "clustering needs at least two subjects");
  if (distances.size() != k) throw Error(ErrorKind::DimensionMismatch, "matrix size does not match ids");
  for (const auto& row : distances)
    if (row.size() != k) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");

  auto dist = distances;
  std::vector<bool> active(k, true);
  std::vector<std::size_t> node(k), size(k, 1);
  for (std::size_t i = 0; i < k; ++i) node[i] = i;

  Dendrogram out;
  out.leaves = ids;
  for (std::size_t step = 0; step + 1 < k; ++step) {
    std::size_t bi = k, bj = k;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (!active[j]) continue;
        if (dist[i][j] < best) {
          best = dist[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]);
    const double nj = static_cast<double>(size[bj]);
    for (std::size_t r = 0; r < k; ++r) {
      if (!active[r] || r == bi || r == bj) continue;
      const double v = (ni * dist[bi][r] + nj * dist[bj][r]) / (ni + nj);
      dist[bi][r] = dist[r][bi] = v;
    }
    out.merges.push_back({node[bi], node[bj], best, size[bi] + size[bj]});
    active[bj] = false;
    size[bi] += size[bj];
    node[bi] = k + step;
  }
  return out;
}

std::vector<std::size_t> leaves_under(const Dendrogram& d, std::size_t node) {
  const std::size_t k = d.leaves.size();
  std::vector<std::size_t> out;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    if (v < k) {
      out.push_back(v);
      return;
    }
    const Merge& m = d.merges.at(v - k);
    visit(m.left);
    visit(m.right);
  };
  visit(node);
  return out;
}

namespace {

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double node_height(const Dendrogram& d, std::size_t v) {
  return v < d.leaves.size() ? 0.0 : d.merges[v - d.leaves.size()].height;
}

std::string newick(const Dendrogram& d) {
  const std::size_t k = d.leaves.size();
  std::function<std::string(std::size_t)> emit = [&](std::size_t v) -> std::string {
    if (v < k) return d.leaves[v];
    const Merge& m = d.merges[v - k];
    return "(" + emit(m.left) + ":" + fmt_num(m.height - node_height(d, m.left)) + "," + emit(m.right) + ":" +
           fmt_num(m.height - node_height(d, m.right)) + ")";
  };
  if (d.merges.empty()) return (k == 1 ? d.leaves[0] : std::string()) + ";";
  return emit(k + d.merges.size() - 1) + ";";
}

std::string json(const Dendrogram& d) {
  nlohmann::json j;
  j["leaves"] = d.leaves;
  j["merges"] = nlohmann::json::array();
  for (const Merge& m : d.merges)
    j["merges"].push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  return j.dump(2) + "\n";
}

std::string ascii(const Dendrogram& d) {
  const std::size_t k = d.leaves.size();
  std::ostringstream os;
  std::function<void(std::size_t, std::size_t)> emit = [&](std::size_t v, std::size_t depth) {
    os << std::string(2 * depth, ' ');
    if (v < k) {
      os << "- " << d.leaves[v] << "\n";
      return;
    }
    const Merge& m = d.merges[v - k];
    os << "+ [" << fmt_num(m.height) << "] (" << m.size << ")\n";
    emit(m.left, depth + 1);
    emit(m.right, depth + 1);
  };
  if (d.merges.empty()) {
    for (const auto& leaf : d.leaves) os << "- " << leaf << "\n";
  } else {
    emit(k + d.merges.size() - 1, 0);
  }
  return os.str();
}

}  // namespace

std::string export_dendrogram(const Dendrogram& d, DendrogramFormat format) {
  switch (format) {
    case DendrogramFormat::newick: return newick(d);
    case DendrogramFormat::json: return json(d);
    case DendrogramFormat::ascii: return ascii(d);
  }
  return {};
}

Dendrogram parse_dendrogram_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Dendrogram d;
    d.leaves = j.at("leaves").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges"))
      d.merges.push_back({m.at("left").get<std::size_t>(), m.at("right").get<std::size_t>(),
                          m.at("height").get<double>(), m.at("size").get<std::size_t>()});
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("dendrogram json: ") + e.what());
  }
}

}  // namespace prefdist
