// Generated fixtures: a corpus planting hypernymy-indicating path templates
// for positive pairs and distractor templates for negatives, plus a directly
// constructed dataset with prototypical hypernyms for the lexical-
// memorization experiments.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hype/conllu.hpp"
#include "hype/dataset.hpp"
#include "hype/path_extract.hpp"

namespace synth {

hype::corpus::Token tok(int index, std::string lemma, std::string upos, int head,
                        std::string deprel);

// "x is a y" (copular tree); x at token 1, y at token 4.
hype::corpus::Sentence sent_is_a(const std::string& x, const std::string& y);
// "such y as x"
hype::corpus::Sentence sent_such_as(const std::string& x, const std::string& y);
// "x and other y"
hype::corpus::Sentence sent_and_other(const std::string& x, const std::string& y);
// "y like x"
hype::corpus::Sentence sent_like(const std::string& x, const std::string& y);
// "x is kind of y"
hype::corpus::Sentence sent_kind_of(const std::string& x, const std::string& y);
// distractors
hype::corpus::Sentence sent_meet(const std::string& x, const std::string& y);
hype::corpus::Sentence sent_near(const std::string& x, const std::string& y);
hype::corpus::Sentence sent_with(const std::string& x, const std::string& y);
hype::corpus::Sentence sent_visit(const std::string& x, const std::string& y);

// The five planted indicative core paths, in template order.
const std::vector<std::string>& planted_paths();
// The four distractor core paths.
const std::vector<std::string>& distractor_paths();

struct PlantedCorpus {
  std::vector<hype::corpus::Sentence> sentences;
  std::vector<hype::dataset::LabeledRelation> relations;
  hype::corpus::Vocabulary vocab;
  int n_positive = 0;
  int n_negative = 0;
};

// n_positive pairs built from prototype categories (five hyponyms per
// category) carrying 2-3 indicative templates each; negatives mix wrong-
// category, reversed-hypernym and filler pairs over 2-3 distractor
// templates, at the requested ratio.
PlantedCorpus make_planted_corpus(std::uint64_t seed, int n_positive = 200, int n_negative = 800);

std::string conllu_text(const std::vector<hype::corpus::Sentence>& sentences);
std::string relations_tsv(const std::vector<hype::dataset::LabeledRelation>& relations);
std::string vocab_text(const hype::corpus::Vocabulary& vocab);

struct MemorizationData {
  std::vector<hype::dataset::LabeledInstance> instances;
  std::string embeddings_text;  // unit vectors per term, no shared structure
};

// Prototypical-hypernym dataset: every positive shares its y with many other
// positives, paths assigned straight from the planted/distractor templates.
MemorizationData make_memorization_data(std::uint64_t seed, int n_positive = 250,
                                        int embedding_dim = 50);

}  // namespace synth
