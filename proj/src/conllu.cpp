#include "hype/conllu.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

#include "hype/util.hpp"

namespace hype::corpus {

bool Sentence::is_valid_tree() const {
  const int n = size();
  if (n == 0) return false;
  int roots = 0;
  for (const Token& t : tokens) {
    if (t.head < 0 || t.head > n || t.head == t.index) return false;
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return false;
  // Every token must reach the root without revisiting a node.
  for (const Token& t : tokens) {
    int cur = t.index;
    int steps = 0;
    while (cur != 0) {
      cur = tokens[static_cast<std::size_t>(cur - 1)].head;
      if (++steps > n) return false;  // cycle
    }
  }
  return true;
}

namespace {

bool parse_int(const std::string& s, int& out) {
  if (s.empty()) return false;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
    if (value > 1000000) return false;
  }
  out = value;
  return true;
}

}  // namespace

ParsedCorpus parse_conllu(std::istream& in) {
  ParsedCorpus result;
  Sentence current;
  std::string line;
  std::size_t line_no = 0;

  auto flush = [&]() {
    if (current.tokens.empty()) return;
    if (current.is_valid_tree())
      result.sentences.push_back(std::move(current));
    else
      ++result.rejected;
    current = Sentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 10)
      throw std::runtime_error("conllu line " + std::to_string(line_no) + ": expected 10 columns, got " +
                               std::to_string(cols.size()));
    // Multiword tokens (ID "1-2") and empty nodes (ID "1.1") are skipped.
    if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos) continue;
    Token tok;
    if (!parse_int(cols[0], tok.index) || tok.index < 1)
      throw std::runtime_error("conllu line " + std::to_string(line_no) + ": bad token ID '" + cols[0] + "'");
    if (tok.index != static_cast<int>(current.tokens.size()) + 1)
      throw std::runtime_error("conllu line " + std::to_string(line_no) + ": token ID out of sequence");
    tok.form = cols[1];
    tok.lemma = util::lowercase(cols[2]);
    tok.upos = cols[3];
    if (!parse_int(cols[6], tok.head))
      throw std::runtime_error("conllu line " + std::to_string(line_no) + ": bad HEAD '" + cols[6] + "'");
    tok.deprel = cols[7];
    current.tokens.push_back(std::move(tok));
  }
  flush();
  return result;
}

ParsedCorpus parse_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  return parse_conllu(in);
}

}  // namespace hype::corpus
