// Extraction of dependency paths between candidate term pairs and the
// corpus-wide index mapping each ordered pair to its path multiset.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hype/conllu.hpp"
#include "hype/dep_path.hpp"

namespace hype::corpus {

// Shortest tree path from x to y in HypeNET notation, if it spans at most
// four tree edges, plus one satellite variant per single daughter of x
// (prepended) and of y (appended) that is not already on the path. Endpoint
// lemmas are replaced by "X"/"Y"; satellite words keep their own lemma.
// Returns an empty vector when the terms are further than four edges apart.
std::vector<DepPath> extract_paths(const Sentence& sentence, int x_index, int y_index);

// Terms are lowercased lemmas; multiword terms are space-joined lemma
// sequences matched contiguously, with the span's syntactic head token
// standing in for the term.
using Vocabulary = std::set<std::string>;

struct TermOccurrence {
  std::string term;
  int head_token;  // 1-based token index used for path extraction
};

std::vector<TermOccurrence> find_term_occurrences(const Sentence& sentence, const Vocabulary& vocab);

using PathCounts = std::map<std::string, std::uint64_t>;  // rendered path -> count

struct PairPathIndex {
  // ordered (x, y) -> path multiset
  std::map<std::pair<std::string, std::string>, PathCounts> entries;

  void add(const std::string& x, const std::string& y, const DepPath& path, std::uint64_t count = 1);
  // Count-wise sum; commutative and associative, so per-shard indexes can be
  // combined in any order.
  void merge(const PairPathIndex& other);

  const PathCounts* find(const std::string& x, const std::string& y) const;

  std::size_t pair_count() const { return entries.size(); }
  std::size_t distinct_path_count() const;

  // TSV `x<TAB>y<TAB>path<TAB>count`, lexicographically sorted, with a
  // leading format-version comment.
  void save_tsv(std::ostream& out) const;
  static PairPathIndex load_tsv(std::istream& in);
  void save_tsv_file(const std::string& path) const;
  static PairPathIndex load_tsv_file(const std::string& path);
};

PairPathIndex index_corpus(const std::vector<Sentence>& sentences, const Vocabulary& vocab);

Vocabulary load_vocabulary(std::istream& in);
Vocabulary load_vocabulary_file(const std::string& path);

}  // namespace hype::corpus
