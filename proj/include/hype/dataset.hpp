// Labeled term-pair construction by distant supervision: relation TSVs in,
// co-occurrence filtering, 1:n class balancing, and random/lexical splits.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hype/path_extract.hpp"

namespace hype::dataset {

struct RelationRecord {
  std::string x;
  std::string y;
  std::string relation;
  std::string resource;
};

struct LabeledRelation {
  RelationRecord record;
  bool positive = false;
};

// (resource, relation) pairs treated as hypernymy.
using Whitelist = std::set<std::pair<std::string, std::string>>;

// WordNet instance hypernym/hypernym, DBPedia type, Wikidata subclass of/
// instance of, Yago subclass of.
Whitelist default_whitelist();

Whitelist load_whitelist(std::istream& in);
Whitelist load_whitelist_file(const std::string& path);

// TSV columns x, y, relation, resource. Whitelisted rows are positive,
// everything else negative; duplicate (x, y) pairs collapse to one record
// with positive winning over negative.
std::vector<LabeledRelation> load_relations(std::istream& in, const Whitelist& whitelist);
std::vector<LabeledRelation> load_relations_file(const std::string& path, const Whitelist& whitelist);

struct LabeledInstance {
  std::string x;
  std::string y;
  bool label = false;  // true = y is a hypernym of x
  corpus::PathCounts paths;
};

// Drops pairs that never co-occur or have fewer than two distinct paths,
// then subsamples negatives uniformly (seeded) down to ratio_negatives per
// positive; when negatives are already deficient nothing is dropped.
std::vector<LabeledInstance> filter_and_balance(const std::vector<LabeledRelation>& records,
                                                const corpus::PairPathIndex& index,
                                                int ratio_negatives, std::uint64_t seed);

enum class SplitMode { Random, Lexical };

struct SplitFractions {
  double train = 0.70;
  double test = 0.25;
  double validation = 0.05;
};

struct DatasetSplit {
  std::vector<LabeledInstance> train;
  std::vector<LabeledInstance> test;
  std::vector<LabeledInstance> validation;
  SplitMode mode = SplitMode::Random;
  std::size_t discarded = 0;  // lexical mode: cross-set pairs dropped
};

// Seeded shuffle then contiguous slices. Test and validation take
// floor(n*fraction) but at least one instance each; train takes the rest.
DatasetSplit split_random(const std::vector<LabeledInstance>& instances, SplitFractions fractions,
                          std::uint64_t seed);

// Partitions the term vocabulary first and keeps an instance only when both
// its terms fall into the same part, so the three vocabularies are disjoint.
DatasetSplit split_lexical(const std::vector<LabeledInstance>& instances, SplitFractions fractions,
                           std::uint64_t seed);

std::set<std::string> term_vocabulary(const std::vector<LabeledInstance>& instances);

// Split files: `x<TAB>y<TAB>label` with a format-version comment; paths are
// re-joined from the index at load time.
void save_split(const DatasetSplit& split, const std::string& dir, std::uint64_t seed);
DatasetSplit load_split(const std::string& dir, const corpus::PairPathIndex& index);

// One split file; pairs missing from the index get empty path multisets.
std::vector<LabeledInstance> load_instances_file(const std::string& file,
                                                 const corpus::PairPathIndex& index);

}  // namespace hype::dataset
