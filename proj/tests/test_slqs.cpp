#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <vector>

#include "hype/slqs.hpp"
#include "support/synthetic_corpus.hpp"

using namespace hype;
using namespace hype::baselines;
using corpus::Sentence;

namespace {

// Two-token sentences "target context"; the context verb hangs off the noun.
Sentence pair_sentence(const std::string& target, const std::string& context) {
  return {{synth::tok(1, target, "NOUN", 0, "ROOT"), synth::tok(2, context, "VERB", 1, "dep")}};
}

void repeat(std::vector<Sentence>& corpus, const std::string& target, const std::string& context,
            int times) {
  for (int i = 0; i < times; ++i) corpus.push_back(pair_sentence(target, context));
}

// The generality corpus: "dog" keeps one exclusive and two narrowly shared
// contexts, "animal" shares every context with two other terms, so animal's
// top contexts carry strictly higher entropy.
std::vector<Sentence> generality_corpus() {
  std::vector<Sentence> corpus;
  repeat(corpus, "dog", "bark", 3);
  repeat(corpus, "dog", "fetch", 2);
  repeat(corpus, "cat", "fetch", 1);
  repeat(corpus, "dog", "run", 2);
  repeat(corpus, "cat", "run", 1);
  repeat(corpus, "animal", "live", 2);
  repeat(corpus, "cat", "live", 2);
  repeat(corpus, "bird", "live", 2);
  repeat(corpus, "animal", "grow", 2);
  repeat(corpus, "bird", "grow", 2);
  repeat(corpus, "fish", "grow", 2);
  repeat(corpus, "animal", "move", 2);
  repeat(corpus, "fish", "move", 2);
  repeat(corpus, "cat", "move", 2);
  // Degenerate shapes for the entropy identities.
  repeat(corpus, "stone", "sit", 2);
  repeat(corpus, "pearl", "shine", 1);
  repeat(corpus, "opal", "shine", 1);
  return corpus;
}

const corpus::Vocabulary kTargets{"dog", "cat", "bird", "fish", "animal", "stone", "pearl", "opal"};

// Independent oracle: recompute term entropies from raw counts with plain
// loops over the definitional formulas.
std::map<std::string, double> oracle_entropies(const std::vector<Sentence>& corpus, int top_n) {
  std::map<std::string, std::map<std::string, double>> counts;
  for (const Sentence& s : corpus) {
    for (const corpus::Token& t : s.tokens) {
      if (!kTargets.count(t.lemma)) continue;
      for (const corpus::Token& c : s.tokens) {
        if (c.index == t.index) continue;
        if (std::abs(c.index - t.index) > 2) continue;
        counts[t.lemma][c.lemma] += 1.0;
      }
    }
  }
  double total = 0.0;
  std::map<std::string, double> row_sum, col_sum;
  for (const auto& [t, row] : counts)
    for (const auto& [c, n] : row) {
      total += n;
      row_sum[t] += n;
      col_sum[c] += n;
    }
  // Normalized context entropy over P(t | c).
  std::map<std::string, std::map<std::string, double>> by_context;
  for (const auto& [t, row] : counts)
    for (const auto& [c, n] : row) by_context[c][t] += n;
  std::map<std::string, double> context_entropy;
  for (const auto& [c, dist] : by_context) {
    if (dist.size() == 1) {
      context_entropy[c] = 0.0;
      continue;
    }
    double h = 0.0;
    for (const auto& [t, n] : dist) {
      double p = n / col_sum[c];
      h -= p * std::log2(p);
    }
    context_entropy[c] = h / std::log2(static_cast<double>(dist.size()));
  }
  std::map<std::string, double> out;
  for (const auto& [t, row] : counts) {
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [c, n] : row) {
      double lmi = n * std::log(n * total / (row_sum[t] * col_sum[c]));
      if (lmi > 0) ranked.push_back({lmi, c});
    }
    if (ranked.empty()) continue;
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (ranked.size() > static_cast<std::size_t>(top_n)) ranked.resize(static_cast<std::size_t>(top_n));
    std::vector<double> hs;
    for (const auto& [lmi, c] : ranked) hs.push_back(context_entropy[c]);
    std::sort(hs.begin(), hs.end());
    out[t] = hs.size() % 2 ? hs[hs.size() / 2]
                           : 0.5 * (hs[hs.size() / 2 - 1] + hs[hs.size() / 2]);
  }
  return out;
}

}  // namespace

TEST_CASE("term entropies match the hand-computed oracle") {
  SlqsConfig config;
  config.max_contexts = 3;
  SlqsModel model = slqs_fit(generality_corpus(), kTargets, config);
  std::map<std::string, double> expected = oracle_entropies(generality_corpus(), 3);
  REQUIRE_FALSE(expected.empty());
  for (const auto& [term, entropy] : expected) {
    REQUIRE(model.entropy_of(term).has_value());
    CHECK(*model.entropy_of(term) == doctest::Approx(entropy).epsilon(1e-12));
  }

  // Frozen values: dog's top contexts are bark (H = 0) plus fetch and run,
  // each split 2:1 between two terms, so E_dog is the median 0.91829...;
  // animal's are three uniform three-way contexts, so E_animal = 1.
  CHECK(*model.entropy_of("animal") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*model.entropy_of("dog") == doctest::Approx(0.9182958340544896).epsilon(1e-12));
}

TEST_CASE("entropy identities: exclusive context 0, two equiprobable terms 1") {
  SlqsConfig config;
  config.max_contexts = 3;
  SlqsModel model = slqs_fit(generality_corpus(), kTargets, config);
  // stone's only context appears with stone alone.
  CHECK(*model.entropy_of("stone") == 0.0);
  // pearl's only context splits evenly between pearl and opal.
  CHECK(*model.entropy_of("pearl") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the general term outranks the specific one in both directions") {
  SlqsConfig config;
  config.max_contexts = 3;
  SlqsModel model = slqs_fit(generality_corpus(), kTargets, config);
  std::optional<double> up = slqs_score(model, "dog", "animal");
  std::optional<double> down = slqs_score(model, "animal", "dog");
  REQUIRE(up.has_value());
  REQUIRE(down.has_value());
  CHECK(*up > 0.0);
  CHECK(*down < 0.0);
  CHECK(*up == doctest::Approx(1.0 - 0.9182958340544896).epsilon(1e-12));
  CHECK(*down == doctest::Approx(1.0 - 1.0 / 0.9182958340544896).epsilon(1e-12));
}

TEST_CASE("score identities and undefined cases") {
  SlqsModel model;
  model.term_entropy = {{"x", 0.4}, {"y", 0.4}, {"zero", 0.0}, {"wide", 0.8}};
  CHECK(*slqs_score(model, "x", "y") == 0.0);            // equal generality
  CHECK(*slqs_score(model, "zero", "wide") == 1.0);      // maximally directed
  CHECK_FALSE(slqs_score(model, "x", "zero").has_value());    // E_y = 0
  CHECK_FALSE(slqs_score(model, "x", "missing").has_value()); // undefined term
  CHECK_FALSE(slqs_score(model, "missing", "x").has_value());
}

TEST_CASE("score signs mirror when generalities differ") {
  SlqsModel model;
  model.term_entropy = {{"narrow", 0.2}, {"broad", 0.9}};
  double forward = *slqs_score(model, "narrow", "broad");
  double backward = *slqs_score(model, "broad", "narrow");
  CHECK(forward > 0.0);
  CHECK(backward < 0.0);
}

TEST_CASE("terms without positive-LMI contexts stay undefined") {
  SlqsModel model = slqs_fit(generality_corpus(), {"dog", "cat", "animal", "unseen"}, {});
  CHECK(model.entropy_of("dog").has_value());
  CHECK_FALSE(model.entropy_of("unseen").has_value());
}

TEST_CASE("zero-count pairs never enter the context counts") {
  SlqsCounts counts = slqs_term_context_counts(generality_corpus(), kTargets, 2);
  CHECK(counts.term_context.at("dog").count("live") == 0);
  CHECK(counts.term_context.at("animal").count("bark") == 0);
}

TEST_CASE("threshold tuning maximizes F1 with the smallest threshold") {
  std::vector<std::pair<std::optional<double>, bool>> scored{
      {0.9, true}, {0.8, true}, {0.5, false}, {0.1, false}, {std::nullopt, false}};
  double threshold = tune_slqs_threshold(scored);
  CHECK(threshold == doctest::Approx(0.65));
  // All pairs above the threshold are the positives.
  for (const auto& [score, label] : scored)
    if (score) CHECK((*score > threshold) == label);
}

TEST_CASE("model JSON round-trips") {
  namespace fs = std::filesystem;
  SlqsModel model = slqs_fit(generality_corpus(), kTargets, {});
  model.threshold = 0.000464;
  fs::path file = fs::temp_directory_path() / "hype_slqs_test.json";
  model.save_json_file(file.string());
  SlqsModel back = SlqsModel::load_json_file(file.string());
  CHECK(back.term_entropy == model.term_entropy);
  CHECK(back.threshold == model.threshold);
  CHECK(back.max_contexts == model.max_contexts);
  fs::remove(file);
}

TEST_CASE("window must be positive") {
  CHECK_THROWS_AS(slqs_term_context_counts({}, {"x"}, 0), std::invalid_argument);
  SlqsConfig bad;
  bad.max_contexts = 0;
  CHECK_THROWS_AS(slqs_fit({}, {"x"}, bad), std::invalid_argument);
}
