#include "hype/slqs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hype/util.hpp"

namespace hype::baselines {

using nlohmann::json;

namespace {

bool is_content_pos(const std::string& upos) {
  return upos == "NOUN" || upos == "PROPN" || upos == "VERB" || upos == "ADJ" || upos == "ADV";
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SlqsCounts slqs_term_context_counts(const std::vector<corpus::Sentence>& sentences,
                                    const corpus::Vocabulary& target_terms, int window) {
  if (window < 1) throw std::invalid_argument("slqs: window must be at least 1");
  SlqsCounts counts;
  for (const corpus::Sentence& sentence : sentences) {
    for (const corpus::TermOccurrence& occ : corpus::find_term_occurrences(sentence, target_terms)) {
      const int span = static_cast<int>(util::split_ws(occ.term).size());
      // find_term_occurrences reports the span head; recover the span start
      // by rematching around it so the window excludes the whole term.
      int start = occ.head_token, end = occ.head_token;
      if (span > 1) {
        for (int s = std::max(1, occ.head_token - span + 1); s <= occ.head_token; ++s) {
          if (s + span - 1 > sentence.size()) continue;
          bool match = true;
          std::vector<std::string> parts = util::split_ws(occ.term);
          for (int k = 0; k < span && match; ++k)
            match = sentence.at(s + k).lemma == parts[static_cast<std::size_t>(k)];
          if (match && occ.head_token >= s && occ.head_token <= s + span - 1) {
            start = s;
            end = s + span - 1;
            break;
          }
        }
      }
      auto& row = counts.term_context[occ.term];
      for (int i = std::max(1, start - window); i <= std::min(sentence.size(), end + window); ++i) {
        if (i >= start && i <= end) continue;
        const corpus::Token& tok = sentence.at(i);
        if (!is_content_pos(tok.upos)) continue;
        if (tok.lemma == occ.term) continue;
        row[tok.lemma] += 1;
      }
    }
  }
  return counts;
}

SlqsModel slqs_fit(const std::vector<corpus::Sentence>& sentences,
                   const corpus::Vocabulary& target_terms, const SlqsConfig& config) {
  if (config.max_contexts < 1) throw std::invalid_argument("slqs: N must be at least 1");
  SlqsModel model;
  model.max_contexts = config.max_contexts;
  model.window = config.window;

  SlqsCounts counts = slqs_term_context_counts(sentences, target_terms, config.window);

  double total = 0.0;
  std::map<std::string, double> term_total, context_total;
  for (const auto& [term, row] : counts.term_context) {
    for (const auto& [context, count] : row) {
      double c = static_cast<double>(count);
      total += c;
      term_total[term] += c;
      context_total[context] += c;
    }
  }
  if (total == 0.0) return model;  // no defined terms

  // Normalized entropy per context over P(t|c).
  std::map<std::string, std::map<std::string, double>> context_term;  // c -> t -> count
  for (const auto& [term, row] : counts.term_context)
    for (const auto& [context, count] : row) context_term[context][term] += static_cast<double>(count);

  std::map<std::string, double> context_entropy;
  for (const auto& [context, dist] : context_term) {
    if (dist.size() < 2) {
      context_entropy[context] = 0.0;
      continue;
    }
    double h = 0.0;
    for (const auto& [term, count] : dist) {
      double p = count / context_total[context];
      h -= p * std::log2(p);
    }
    context_entropy[context] = h / std::log2(static_cast<double>(dist.size()));
  }

  for (const auto& [term, row] : counts.term_context) {
    // Rank the term's contexts by LMI, keeping only positive associations.
    std::vector<std::pair<double, const std::string*>> ranked;
    for (const auto& [context, count] : row) {
      double joint = static_cast<double>(count);
      double lmi = joint * std::log(joint * total / (term_total[term] * context_total[context]));
      if (lmi > 0.0) ranked.emplace_back(lmi, &context);
    }
    if (ranked.empty()) continue;  // generality undefined for this term
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& lhs, const auto& rhs) {
      if (lhs.first != rhs.first) return lhs.first > rhs.first;
      return *lhs.second < *rhs.second;
    });
    const std::size_t top = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(config.max_contexts));
    std::vector<double> entropies;
    entropies.reserve(top);
    for (std::size_t i = 0; i < top; ++i) entropies.push_back(context_entropy.at(*ranked[i].second));
    model.term_entropy[term] = median(std::move(entropies));
  }
  return model;
}

std::optional<double> SlqsModel::entropy_of(const std::string& term) const {
  auto it = term_entropy.find(term);
  if (it == term_entropy.end()) return std::nullopt;
  return it->second;
}

std::optional<double> slqs_score(const SlqsModel& model, const std::string& x, const std::string& y) {
  std::optional<double> ex = model.entropy_of(x);
  std::optional<double> ey = model.entropy_of(y);
  if (!ex || !ey || *ey == 0.0) return std::nullopt;
  return 1.0 - *ex / *ey;
}

double tune_slqs_threshold(const std::vector<std::pair<std::optional<double>, bool>>& scored) {
  // Candidates: midpoints between consecutive distinct defined scores, plus
  // one below the minimum. Undefined scores always classify negative.
  std::vector<double> values;
  for (const auto& [score, label] : scored)
    if (score) values.push_back(*score);
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<double> candidates;
  candidates.push_back(values.front() - 1.0);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    candidates.push_back(0.5 * (values[i] + values[i + 1]));
  candidates.push_back(values.back() + 1.0);

  double best_f1 = -1.0, best_threshold = 0.0;
  for (double threshold : candidates) {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (const auto& [score, label] : scored) {
      bool predicted = score && *score > threshold;
      if (predicted && label) ++tp;
      else if (predicted && !label) ++fp;
      else if (!predicted && label) ++fn;
    }
    double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    double f1 = precision + recall == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
    if (f1 > best_f1) {
      best_f1 = f1;
      best_threshold = threshold;
    }
  }
  return best_threshold;
}

void SlqsModel::save_json_file(const std::string& path) const {
  json j;
  j["format_version"] = 1;
  j["kind"] = "slqs";
  j["max_contexts"] = max_contexts;
  j["window"] = window;
  j["threshold"] = threshold;
  j["term_entropy"] = term_entropy;
  util::atomic_write_file(path, j.dump(2) + "\n");
}

SlqsModel SlqsModel::load_json_file(const std::string& path) {
  json j = json::parse(util::read_file(path));
  if (j.value("format_version", 0) != 1 || j.value("kind", "") != "slqs")
    throw std::runtime_error("not a version-1 slqs model: " + path);
  SlqsModel model;
  model.max_contexts = j.at("max_contexts").get<int>();
  model.window = j.at("window").get<int>();
  model.threshold = j.at("threshold").get<double>();
  model.term_entropy = j.at("term_entropy").get<std::map<std::string, double>>();
  return model;
}

}  // namespace hype::baselines
