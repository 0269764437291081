// Entropy-based unsupervised hypernymy measure: a term whose most associated
// contexts carry higher entropy is taken as the more general one. Context
// selection uses local mutual information (LMI); per-term generality is the
// median normalized entropy of the top contexts. The co-occurrence window,
// log base and normalization below are reconstructions of the standard
// formulation; only the adaptations (lemmatized terms, no cosine factor,
// top-min(N, positive-LMI contexts)) are prescribed.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hype/conllu.hpp"
#include "hype/path_extract.hpp"

namespace hype::baselines {

struct SlqsConfig {
  int max_contexts = 100;  // N
  int window = 2;          // symmetric, in tokens around the term span
};

struct SlqsModel {
  int max_contexts = 100;
  int window = 2;
  double threshold = 0.0;  // classify positive above this score
  std::map<std::string, double> term_entropy;  // median entropy of top contexts; defined terms only

  std::optional<double> entropy_of(const std::string& term) const;

  void save_json_file(const std::string& path) const;
  static SlqsModel load_json_file(const std::string& path);
};

// count(t, c) for target terms against lemmatized content-word contexts
// (NOUN/PROPN/VERB/ADJ/ADV) inside the window.
struct SlqsCounts {
  std::map<std::string, std::map<std::string, std::uint64_t>> term_context;  // t -> c -> count
};

SlqsCounts slqs_term_context_counts(const std::vector<corpus::Sentence>& sentences,
                                    const corpus::Vocabulary& target_terms, int window);

// LMI(t,c) = count(t,c) * log[ p(t,c) / (p(t) p(c)) ]; zero count gives zero.
// Context entropy is Shannon entropy over P(t|c) in bits, normalized by
// log2 of the context's distinct-term count.
SlqsModel slqs_fit(const std::vector<corpus::Sentence>& sentences,
                   const corpus::Vocabulary& target_terms, const SlqsConfig& config);

// SLQS(x, y) = 1 - E_x / E_y; empty when either term is undefined or E_y = 0
// (such pairs classify negative and are flagged by callers).
std::optional<double> slqs_score(const SlqsModel& model, const std::string& x, const std::string& y);

// Smallest threshold maximizing F1 on the given scored pairs.
double tune_slqs_threshold(const std::vector<std::pair<std::optional<double>, bool>>& scored);

}  // namespace hype::baselines
