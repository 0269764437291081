#include "hype/path_extract.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hype/util.hpp"

namespace hype::corpus {

namespace {

constexpr int kMaxCoreEdges = 4;

std::vector<int> chain_to_root(const Sentence& s, int index) {
  std::vector<int> chain;
  int cur = index;
  while (cur != 0) {
    if (chain.size() > s.tokens.size())
      throw std::invalid_argument("extract_paths: sentence is not a tree");
    chain.push_back(cur);
    cur = s.at(cur).head;
  }
  return chain;
}

PathEdge node_edge(const Sentence& s, int index, Dir dir, const std::string& placeholder) {
  const Token& t = s.at(index);
  return PathEdge::full(placeholder.empty() ? t.lemma : placeholder, t.upos, t.deprel, dir);
}

}  // namespace

std::vector<DepPath> extract_paths(const Sentence& sentence, int x_index, int y_index) {
  const int n = sentence.size();
  if (x_index < 1 || x_index > n || y_index < 1 || y_index > n)
    throw std::invalid_argument("extract_paths: token index out of range");
  if (x_index == y_index) throw std::invalid_argument("extract_paths: x and y must differ");

  // Locate the apex (lowest common ancestor) via the two root chains.
  std::vector<int> x_chain = chain_to_root(sentence, x_index);
  std::vector<int> y_chain = chain_to_root(sentence, y_index);
  int apex = 0;
  std::size_t xi = x_chain.size(), yi = y_chain.size();
  while (xi > 0 && yi > 0 && x_chain[xi - 1] == y_chain[yi - 1]) {
    apex = x_chain[xi - 1];
    --xi;
    --yi;
  }
  // Both chains end at the root of the same tree, so an apex always exists.
  // Node sequence x .. apex .. y; xi/yi now index the first node below the apex.
  std::vector<int> nodes;      // token indices along the path
  std::vector<Dir> dirs;
  for (std::size_t i = 0; i < xi; ++i) {
    nodes.push_back(x_chain[i]);
    dirs.push_back(Dir::Up);
  }
  nodes.push_back(apex);
  dirs.push_back(Dir::Apex);
  for (std::size_t i = yi; i-- > 0;) {
    nodes.push_back(y_chain[i]);
    dirs.push_back(Dir::Down);
  }

  const int tree_edges = static_cast<int>(nodes.size()) - 1;
  if (tree_edges > kMaxCoreEdges) return {};

  DepPath core;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string placeholder;
    if (nodes[i] == x_index) placeholder = "X";
    else if (nodes[i] == y_index) placeholder = "Y";
    core.edges.push_back(node_edge(sentence, nodes[i], dirs[i], placeholder));
  }

  std::vector<DepPath> out{core};
  std::set<std::string> seen{core.render()};
  auto add_variant = [&](DepPath variant) {
    variant.satellite = true;
    std::string key = variant.render();
    if (seen.insert(key).second) out.push_back(std::move(variant));
  };

  std::set<int> on_path(nodes.begin(), nodes.end());
  for (const Token& t : sentence.tokens) {
    if (on_path.count(t.index)) continue;
    if (t.head == x_index) {
      DepPath variant;
      variant.edges.push_back(node_edge(sentence, t.index, Dir::Up, ""));
      variant.edges.insert(variant.edges.end(), core.edges.begin(), core.edges.end());
      add_variant(std::move(variant));
    } else if (t.head == y_index) {
      DepPath variant = core;
      variant.edges.push_back(node_edge(sentence, t.index, Dir::Down, ""));
      add_variant(std::move(variant));
    }
  }
  return out;
}

std::vector<TermOccurrence> find_term_occurrences(const Sentence& sentence, const Vocabulary& vocab) {
  std::vector<TermOccurrence> out;
  for (const std::string& term : vocab) {
    std::vector<std::string> parts = util::split_ws(term);
    if (parts.empty()) continue;
    const int span = static_cast<int>(parts.size());
    for (int start = 1; start + span - 1 <= sentence.size(); ++start) {
      bool match = true;
      for (int k = 0; k < span && match; ++k)
        match = sentence.at(start + k).lemma == parts[static_cast<std::size_t>(k)];
      if (!match) continue;
      // The span's head token (the one governed from outside) stands in for
      // the term; fall back to the first token for malformed spans.
      int head_token = start;
      for (int k = 0; k < span; ++k) {
        int h = sentence.at(start + k).head;
        if (h < start || h > start + span - 1) {
          head_token = start + k;
          break;
        }
      }
      out.push_back({term, head_token});
    }
  }
  return out;
}

void PairPathIndex::add(const std::string& x, const std::string& y, const DepPath& path,
                        std::uint64_t count) {
  entries[{x, y}][path.render()] += count;
}

void PairPathIndex::merge(const PairPathIndex& other) {
  for (const auto& [pair, paths] : other.entries) {
    PathCounts& mine = entries[pair];
    for (const auto& [path, count] : paths) mine[path] += count;
  }
}

const PathCounts* PairPathIndex::find(const std::string& x, const std::string& y) const {
  auto it = entries.find({x, y});
  return it == entries.end() ? nullptr : &it->second;
}

std::size_t PairPathIndex::distinct_path_count() const {
  std::set<std::string> paths;
  for (const auto& [pair, counts] : entries)
    for (const auto& [path, count] : counts) paths.insert(path);
  return paths.size();
}

namespace {
constexpr const char* kIndexFormat = "# hypenet-index v1";
}

void PairPathIndex::save_tsv(std::ostream& out) const {
  out << kIndexFormat << "\n";
  for (const auto& [pair, paths] : entries)
    for (const auto& [path, count] : paths)
      out << pair.first << '\t' << pair.second << '\t' << path << '\t' << count << '\n';
}

PairPathIndex PairPathIndex::load_tsv(std::istream& in) {
  PairPathIndex index;
  std::string line;
  std::size_t line_no = 0;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line_no == 1) {
        if (line != kIndexFormat)
          throw std::runtime_error("unsupported index format: " + line);
        version_seen = true;
      }
      continue;
    }
    if (!version_seen) throw std::runtime_error("index file missing format-version header");
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 4)
      throw std::runtime_error("index line " + std::to_string(line_no) + ": expected 4 columns");
    std::uint64_t count = 0;
    try {
      count = std::stoull(cols[3]);
    } catch (const std::exception&) {
      throw std::runtime_error("index line " + std::to_string(line_no) + ": bad count '" + cols[3] + "'");
    }
    if (count == 0)
      throw std::runtime_error("index line " + std::to_string(line_no) + ": count must be positive");
    index.entries[{cols[0], cols[1]}][cols[2]] += count;
  }
  return index;
}

void PairPathIndex::save_tsv_file(const std::string& path) const {
  std::ostringstream ss;
  save_tsv(ss);
  util::atomic_write_file(path, ss.str());
}

PairPathIndex PairPathIndex::load_tsv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file: " + path);
  return load_tsv(in);
}

PairPathIndex index_corpus(const std::vector<Sentence>& sentences, const Vocabulary& vocab) {
  if (vocab.empty()) throw std::invalid_argument("index_corpus: vocabulary is empty");
  PairPathIndex index;
  for (const Sentence& sentence : sentences) {
    std::vector<TermOccurrence> occurrences = find_term_occurrences(sentence, vocab);
    for (const TermOccurrence& a : occurrences) {
      for (const TermOccurrence& b : occurrences) {
        if (a.term == b.term || a.head_token == b.head_token) continue;
        for (const DepPath& path : extract_paths(sentence, a.head_token, b.head_token))
          index.add(a.term, b.term, path);
      }
    }
  }
  return index;
}

Vocabulary load_vocabulary(std::istream& in) {
  Vocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string term = util::join(util::split_ws(util::lowercase(line)), " ");
    if (!term.empty() && term[0] != '#') vocab.insert(term);
  }
  return vocab;
}

Vocabulary load_vocabulary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocabulary file: " + path);
  return load_vocabulary(in);
}

}  // namespace hype::corpus
