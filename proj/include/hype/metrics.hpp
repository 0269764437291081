// Precision/recall/F1 and the automated error-category report.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hype/dataset.hpp"
#include "hype/path_extract.hpp"

namespace hype::analysis {

struct Metrics {
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

// Binary labels, 0/1; lists must align.
Metrics evaluate(const std::vector<int>& predicted, const std::vector<int>& gold);

struct BreakdownConfig {
  std::uint64_t low_cooccurrence_threshold = 25;
  double infrequent_percentile = 10.0;  // corpus-frequency percentile for "infrequent term"
};

struct ErrorBreakdown {
  std::map<std::string, std::uint64_t> false_positives_by_relation;
  // Overlapping false-negative categories; pairs in neither are uncategorized.
  std::uint64_t fn_low_cooccurrence = 0;
  std::uint64_t fn_infrequent_term = 0;
  std::uint64_t fn_uncategorized = 0;
  std::uint64_t fn_total = 0;
  std::uint64_t fp_total = 0;
};

struct EvaluatedPair {
  std::string x, y;
  int predicted = 0;
  int gold = 0;
};

// False positives bucketed by the gold relation string; false negatives by
// joint co-occurrence count (total path count in the index) and by either
// term's corpus frequency falling at or below the configured percentile.
ErrorBreakdown error_breakdown(const std::vector<EvaluatedPair>& pairs,
                               const corpus::PairPathIndex& index,
                               const std::vector<dataset::LabeledRelation>& relations,
                               const BreakdownConfig& config = {});

}  // namespace hype::analysis
