// Path generalization and chi-squared feature selection for the linear
// path-based baselines.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "hype/dataset.hpp"
#include "hype/dep_path.hpp"

namespace hype::features {

// Every combination of keeping, POS-generalizing, or wildcarding each
// non-endpoint edge: 3^(k-2) variants for a k-edge path, original included.
// The X and Y edges are never generalized.
std::vector<corpus::DepPath> generalize_path(const corpus::DepPath& path);

// One-degree-of-freedom chi-squared statistic of the 2x2 contingency table
// (feature presence x label); 0 whenever a marginal is empty.
double chi2_from_table(std::uint64_t present_pos, std::uint64_t present_neg,
                       std::uint64_t absent_pos, std::uint64_t absent_neg);
double chi2_score(const std::vector<bool>& feature_presence, const std::vector<bool>& labels);

struct FeatureSpace {
  std::vector<std::string> paths;   // id -> rendered path
  std::vector<double> scores;       // id -> chi-squared score
  std::unordered_map<std::string, int> ids;
  bool generalized = false;

  int size() const { return static_cast<int>(paths.size()); }
  int id_of(const std::string& path) const;  // -1 when absent

  void save_tsv(std::ostream& out) const;
  static FeatureSpace load_tsv(std::istream& in);
};

// Scores every (generalized) path by chi-squared over presence and keeps the
// top k, ties broken by lexicographic path string.
FeatureSpace build_feature_space(const std::vector<dataset::LabeledInstance>& instances,
                                 bool generalize, std::size_t k);

struct SparseVector {
  // (feature id, value), ids strictly increasing, values positive
  std::vector<std::pair<int, double>> items;
};

// Path counts mapped through the space; generalized variants inherit the
// original path's count and counts landing on one feature sum.
SparseVector vectorize(const dataset::LabeledInstance& instance, const FeatureSpace& space,
                       bool generalize);

}  // namespace hype::features
