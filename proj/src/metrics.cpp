#include "hype/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hype::analysis {

Metrics evaluate(const std::vector<int>& predicted, const std::vector<int>& gold) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("evaluate: prediction and gold lists differ in length");
  Metrics m;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && gold[i]) ++m.tp;
    else if (predicted[i] && !gold[i]) ++m.fp;
    else if (!predicted[i] && gold[i]) ++m.fn;
    else ++m.tn;
  }
  m.precision = m.tp + m.fp == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  m.recall = m.tp + m.fn == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  m.f1 = m.precision + m.recall == 0.0 ? 0.0
                                       : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

ErrorBreakdown error_breakdown(const std::vector<EvaluatedPair>& pairs,
                               const corpus::PairPathIndex& index,
                               const std::vector<dataset::LabeledRelation>& relations,
                               const BreakdownConfig& config) {
  // Gold relation strings per pair, and corpus frequency per term.
  std::map<std::pair<std::string, std::string>, std::string> relation_of;
  for (const dataset::LabeledRelation& rel : relations)
    relation_of.emplace(std::make_pair(rel.record.x, rel.record.y), rel.record.relation);

  std::map<std::string, std::uint64_t> term_frequency;
  for (const auto& [pair, paths] : index.entries) {
    std::uint64_t total = 0;
    for (const auto& [path, count] : paths) total += count;
    term_frequency[pair.first] += total;
    term_frequency[pair.second] += total;
  }
  std::vector<std::uint64_t> freqs;
  freqs.reserve(term_frequency.size());
  for (const auto& [term, freq] : term_frequency) freqs.push_back(freq);
  std::sort(freqs.begin(), freqs.end());
  std::uint64_t infrequent_cutoff = 0;
  if (!freqs.empty()) {
    // Nearest-rank percentile.
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(config.infrequent_percentile / 100.0 * static_cast<double>(freqs.size())));
    rank = std::min(std::max<std::size_t>(rank, 1), freqs.size());
    infrequent_cutoff = freqs[rank - 1];
  }

  ErrorBreakdown report;
  for (const EvaluatedPair& pair : pairs) {
    if (pair.predicted == pair.gold) continue;
    if (pair.predicted && !pair.gold) {
      ++report.fp_total;
      auto it = relation_of.find({pair.x, pair.y});
      report.false_positives_by_relation[it == relation_of.end() ? "unknown" : it->second] += 1;
      continue;
    }
    ++report.fn_total;
    std::uint64_t cooccurrences = 0;
    if (const corpus::PathCounts* paths = index.find(pair.x, pair.y))
      for (const auto& [path, count] : *paths) cooccurrences += count;
    bool low = cooccurrences < config.low_cooccurrence_threshold;
    auto fx = term_frequency.find(pair.x);
    auto fy = term_frequency.find(pair.y);
    std::uint64_t min_freq = std::min(fx == term_frequency.end() ? 0 : fx->second,
                                      fy == term_frequency.end() ? 0 : fy->second);
    bool infrequent = min_freq <= infrequent_cutoff;
    if (low) ++report.fn_low_cooccurrence;
    if (infrequent) ++report.fn_infrequent_term;
    if (!low && !infrequent) ++report.fn_uncategorized;
  }
  return report;
}

}  // namespace hype::analysis
