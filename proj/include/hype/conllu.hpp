// CoNLL-U reader: builds validated dependency trees from pre-parsed corpora.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hype::corpus {

struct Token {
  int index = 0;       // 1-based position in the sentence
  std::string form;
  std::string lemma;   // lowercased
  std::string upos;
  int head = 0;        // 0 = root
  std::string deprel;
};

struct Sentence {
  std::vector<Token> tokens;

  const Token& at(int index) const { return tokens.at(static_cast<std::size_t>(index - 1)); }
  int size() const { return static_cast<int>(tokens.size()); }

  // Exactly one root, every head in range, no self-heads, no cycles.
  bool is_valid_tree() const;
};

struct ParsedCorpus {
  std::vector<Sentence> sentences;
  std::size_t rejected = 0;  // structurally invalid sentences, skipped
};

// Reads CoNLL-U: 10 tab-separated columns per token line, blank line between
// sentences, '#' comments ignored, multiword-token and empty-node lines
// skipped. Uses ID, FORM, LEMMA, UPOS, HEAD, DEPREL. A malformed line throws
// with its line number; a cyclic or multi-root sentence is counted and
// dropped instead.
ParsedCorpus parse_conllu(std::istream& in);
ParsedCorpus parse_conllu_file(const std::string& path);

}  // namespace hype::corpus
