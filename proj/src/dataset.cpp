#include "hype/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hype/util.hpp"

namespace hype::dataset {

namespace fs = std::filesystem;
using nlohmann::json;

Whitelist default_whitelist() {
  return {
      {"wordnet", "instance hypernym"}, {"wordnet", "hypernym"}, {"dbpedia", "type"},
      {"wikidata", "subclass of"},      {"wikidata", "instance of"}, {"yago", "subclass of"},
  };
}

Whitelist load_whitelist(std::istream& in) {
  Whitelist out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 2)
      throw std::runtime_error("whitelist line " + std::to_string(line_no) +
                               ": expected resource<TAB>relation");
    out.insert({util::lowercase(cols[0]), util::lowercase(cols[1])});
  }
  return out;
}

Whitelist load_whitelist_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open whitelist file: " + path);
  return load_whitelist(in);
}

std::vector<LabeledRelation> load_relations(std::istream& in, const Whitelist& whitelist) {
  std::vector<LabeledRelation> out;
  std::map<std::pair<std::string, std::string>, std::size_t> position;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 4)
      throw std::runtime_error("relations line " + std::to_string(line_no) +
                               ": expected x<TAB>y<TAB>relation<TAB>resource");
    RelationRecord rec;
    rec.x = util::lowercase(util::trim(cols[0]));
    rec.y = util::lowercase(util::trim(cols[1]));
    rec.relation = util::lowercase(util::trim(cols[2]));
    rec.resource = util::lowercase(util::trim(cols[3]));
    if (rec.x.empty() || rec.y.empty() || rec.x == rec.y)
      throw std::runtime_error("relations line " + std::to_string(line_no) + ": invalid term pair");
    bool positive = whitelist.count({rec.resource, rec.relation}) > 0;
    auto key = std::make_pair(rec.x, rec.y);
    auto it = position.find(key);
    if (it == position.end()) {
      position.emplace(key, out.size());
      out.push_back({std::move(rec), positive});
    } else if (positive && !out[it->second].positive) {
      out[it->second] = {std::move(rec), true};  // positive wins
    }
  }
  return out;
}

std::vector<LabeledRelation> load_relations_file(const std::string& path, const Whitelist& whitelist) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open relations file: " + path);
  return load_relations(in, whitelist);
}

std::vector<LabeledInstance> filter_and_balance(const std::vector<LabeledRelation>& records,
                                                const corpus::PairPathIndex& index,
                                                int ratio_negatives, std::uint64_t seed) {
  if (ratio_negatives < 1) throw std::invalid_argument("filter_and_balance: ratio must be at least 1:1");
  std::vector<LabeledInstance> surviving;
  for (const LabeledRelation& rel : records) {
    const corpus::PathCounts* paths = index.find(rel.record.x, rel.record.y);
    if (paths == nullptr || paths->size() < 2) continue;
    surviving.push_back({rel.record.x, rel.record.y, rel.positive, *paths});
  }
  std::size_t positives = 0, negatives = 0;
  for (const LabeledInstance& inst : surviving) (inst.label ? positives : negatives)++;
  if (positives == 0) throw std::runtime_error("no positive pairs survive the co-occurrence filter");

  const std::size_t target = positives * static_cast<std::size_t>(ratio_negatives);
  if (negatives <= target) return surviving;

  // Subsample negatives uniformly, preserving original order.
  std::vector<std::size_t> neg_indices;
  for (std::size_t i = 0; i < surviving.size(); ++i)
    if (!surviving[i].label) neg_indices.push_back(i);
  std::mt19937_64 rng(seed);
  util::shuffle(neg_indices, rng);
  neg_indices.resize(target);
  std::set<std::size_t> keep(neg_indices.begin(), neg_indices.end());
  std::vector<LabeledInstance> out;
  out.reserve(positives + target);
  for (std::size_t i = 0; i < surviving.size(); ++i)
    if (surviving[i].label || keep.count(i)) out.push_back(std::move(surviving[i]));
  return out;
}

namespace {

void check_fractions(const SplitFractions& f) {
  if (f.train <= 0 || f.test <= 0 || f.validation <= 0 ||
      std::abs(f.train + f.test + f.validation - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must be positive and sum to 1");
}

// floor(n * fraction) with a minimum of one per set; train absorbs the rest.
struct SliceSizes {
  std::size_t train, test, validation;
};

SliceSizes slice_sizes(std::size_t n, const SplitFractions& f, const char* what) {
  SliceSizes s{};
  s.test = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * f.test)));
  s.validation =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(static_cast<double>(n) * f.validation)));
  if (s.test + s.validation >= n)
    throw std::runtime_error(std::string("not enough ") + what + " to form three non-empty splits");
  s.train = n - s.test - s.validation;
  return s;
}

}  // namespace

DatasetSplit split_random(const std::vector<LabeledInstance>& instances, SplitFractions fractions,
                          std::uint64_t seed) {
  check_fractions(fractions);
  if (instances.size() < 3) throw std::runtime_error("split_random: need at least 3 instances");
  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  util::shuffle(order, rng);
  SliceSizes sizes = slice_sizes(instances.size(), fractions, "instances");
  DatasetSplit split;
  split.mode = SplitMode::Random;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const LabeledInstance& inst = instances[order[i]];
    if (i < sizes.train)
      split.train.push_back(inst);
    else if (i < sizes.train + sizes.test)
      split.test.push_back(inst);
    else
      split.validation.push_back(inst);
  }
  return split;
}

std::set<std::string> term_vocabulary(const std::vector<LabeledInstance>& instances) {
  std::set<std::string> terms;
  for (const LabeledInstance& inst : instances) {
    terms.insert(inst.x);
    terms.insert(inst.y);
  }
  return terms;
}

DatasetSplit split_lexical(const std::vector<LabeledInstance>& instances, SplitFractions fractions,
                           std::uint64_t seed) {
  check_fractions(fractions);
  std::set<std::string> term_set = term_vocabulary(instances);
  if (term_set.size() < 3) throw std::runtime_error("split_lexical: need at least 3 distinct terms");
  std::vector<std::string> terms(term_set.begin(), term_set.end());
  std::mt19937_64 rng(seed);
  util::shuffle(terms, rng);
  SliceSizes sizes = slice_sizes(terms.size(), fractions, "terms");
  std::map<std::string, int> part;  // 0=train 1=test 2=validation
  for (std::size_t i = 0; i < terms.size(); ++i)
    part[terms[i]] = i < sizes.train ? 0 : (i < sizes.train + sizes.test ? 1 : 2);

  DatasetSplit split;
  split.mode = SplitMode::Lexical;
  for (const LabeledInstance& inst : instances) {
    int px = part.at(inst.x), py = part.at(inst.y);
    if (px != py) {
      ++split.discarded;
      continue;
    }
    (px == 0 ? split.train : px == 1 ? split.test : split.validation).push_back(inst);
  }
  if (split.train.empty() || split.test.empty() || split.validation.empty())
    throw std::runtime_error(
        "lexical split produced an empty set; try a different seed or fractions");
  return split;
}

namespace {

constexpr const char* kDatasetFormat = "# hypenet-dataset v1";

std::string render_split_tsv(const std::vector<LabeledInstance>& instances) {
  std::ostringstream ss;
  ss << kDatasetFormat << "\n";
  for (const LabeledInstance& inst : instances)
    ss << inst.x << '\t' << inst.y << '\t' << (inst.label ? 1 : 0) << '\n';
  return ss.str();
}

std::vector<LabeledInstance> load_split_tsv(const fs::path& file, const corpus::PairPathIndex& index) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open split file: " + file.string());
  std::vector<LabeledInstance> out;
  std::string line;
  std::size_t line_no = 0;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line_no == 1) {
        if (line != kDatasetFormat) throw std::runtime_error("unsupported dataset format: " + line);
        version_seen = true;
      }
      continue;
    }
    if (!version_seen) throw std::runtime_error("dataset file missing format-version header");
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 3 || (cols[2] != "0" && cols[2] != "1"))
      throw std::runtime_error(file.string() + " line " + std::to_string(line_no) + ": expected x<TAB>y<TAB>0|1");
    LabeledInstance inst;
    inst.x = cols[0];
    inst.y = cols[1];
    inst.label = cols[2] == "1";
    if (const corpus::PathCounts* paths = index.find(inst.x, inst.y)) inst.paths = *paths;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

void save_split(const DatasetSplit& split, const std::string& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  util::atomic_write_file(fs::path(dir) / "train.tsv", render_split_tsv(split.train));
  util::atomic_write_file(fs::path(dir) / "test.tsv", render_split_tsv(split.test));
  util::atomic_write_file(fs::path(dir) / "val.tsv", render_split_tsv(split.validation));
  json manifest;
  manifest["format_version"] = 1;
  manifest["mode"] = split.mode == SplitMode::Random ? "random" : "lexical";
  manifest["seed"] = seed;
  manifest["counts"] = {{"train", split.train.size()},
                        {"test", split.test.size()},
                        {"validation", split.validation.size()}};
  manifest["discarded"] = split.discarded;
  util::atomic_write_file(fs::path(dir) / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<LabeledInstance> load_instances_file(const std::string& file,
                                                 const corpus::PairPathIndex& index) {
  return load_split_tsv(file, index);
}

DatasetSplit load_split(const std::string& dir, const corpus::PairPathIndex& index) {
  DatasetSplit split;
  fs::path manifest_path = fs::path(dir) / "manifest.json";
  json manifest = json::parse(util::read_file(manifest_path));
  if (!manifest.contains("format_version") || manifest["format_version"].get<int>() != 1)
    throw std::runtime_error("unsupported dataset manifest version in " + manifest_path.string());
  split.mode = manifest.at("mode").get<std::string>() == "lexical" ? SplitMode::Lexical : SplitMode::Random;
  split.discarded = manifest.value("discarded", 0u);
  split.train = load_split_tsv(fs::path(dir) / "train.tsv", index);
  split.test = load_split_tsv(fs::path(dir) / "test.tsv", index);
  split.validation = load_split_tsv(fs::path(dir) / "val.tsv", index);
  return split;
}

}  // namespace hype::dataset
