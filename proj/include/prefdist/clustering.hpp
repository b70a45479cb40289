#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prefdist/model.hpp"

namespace prefdist {

/// Merge of two nodes. Leaves are nodes 0..k-1; merge t creates node k+t.
struct Merge {
  std::size_t left;
  std::size_t right;
  double height;
  std::size_t size;
  bool operator==(const Merge&) const = default;
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
  bool operator==(const Dendrogram&) const = default;
};

/// Unweighted average linkage (UPGMA) via the Lance-Williams update.
/// Ties go to the lexicographically smallest (row, column) cluster pair,
/// where a merged cluster keeps the smaller row of its two parts.
Dendrogram average_linkage(const DissimilarityMatrix& matrix);

/// Same on a plain symmetric matrix of means.
Dendrogram average_linkage(const std::vector<std::string>& ids, const std::vector<std::vector<double>>& distances);

enum class DendrogramFormat { newick, json, ascii };

std::string export_dendrogram(const Dendrogram& d, DendrogramFormat format);
Dendrogram parse_dendrogram_json(const std::string& text);

/// Leaves under `node`, in left-to-right order.
std::vector<std::size_t> leaves_under(const Dendrogram& d, std::size_t node);

}  // namespace prefdist
