#include "hype/feature_space.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "hype/util.hpp"

namespace hype::features {

using corpus::DepPath;
using corpus::EdgeShape;
using corpus::PathEdge;

std::vector<DepPath> generalize_path(const DepPath& path) {
  // Only full non-endpoint edges generalize; edges that are already POS tags
  // or wildcards stay as they are.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < path.edges.size(); ++i)
    if (path.edges[i].shape == EdgeShape::Full && !path.edges[i].is_endpoint()) open.push_back(i);

  std::vector<DepPath> out;
  std::set<std::string> seen;
  const std::size_t variants = static_cast<std::size_t>(std::pow(3.0, static_cast<double>(open.size())));
  for (std::size_t mask = 0; mask < variants; ++mask) {
    DepPath variant = path;
    std::size_t code = mask;
    for (std::size_t idx : open) {
      switch (code % 3) {
        case 0: break;  // verbatim
        case 1: variant.edges[idx] = PathEdge::pos_only(path.edges[idx].pos); break;
        case 2: variant.edges[idx] = PathEdge::wildcard(); break;
      }
      code /= 3;
    }
    if (seen.insert(variant.render()).second) out.push_back(std::move(variant));
  }
  return out;
}

double chi2_from_table(std::uint64_t present_pos, std::uint64_t present_neg,
                       std::uint64_t absent_pos, std::uint64_t absent_neg) {
  const double a = static_cast<double>(present_pos), b = static_cast<double>(present_neg);
  const double c = static_cast<double>(absent_pos), d = static_cast<double>(absent_neg);
  const double n = a + b + c + d;
  const double row1 = a + b, row2 = c + d, col1 = a + c, col2 = b + d;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 0.0;
  const double det = a * d - b * c;
  return n * det * det / (row1 * row2 * col1 * col2);
}

double chi2_score(const std::vector<bool>& feature_presence, const std::vector<bool>& labels) {
  if (feature_presence.size() != labels.size())
    throw std::invalid_argument("chi2_score: presence and label vectors differ in length");
  if (feature_presence.empty()) throw std::invalid_argument("chi2_score: need at least one instance");
  std::uint64_t a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (feature_presence[i])
      (labels[i] ? a : b)++;
    else
      (labels[i] ? c : d)++;
  }
  return chi2_from_table(a, b, c, d);
}

int FeatureSpace::id_of(const std::string& path) const {
  auto it = ids.find(path);
  return it == ids.end() ? -1 : it->second;
}

namespace {
constexpr const char* kFeaturesFormat = "# hypenet-features v1";

std::vector<std::string> instance_features(const dataset::LabeledInstance& inst, bool generalize) {
  std::set<std::string> features;
  for (const auto& [path, count] : inst.paths) {
    if (generalize) {
      for (const DepPath& variant : generalize_path(DepPath::parse(path)))
        features.insert(variant.render());
    } else {
      features.insert(path);
    }
  }
  return {features.begin(), features.end()};
}

}  // namespace

FeatureSpace build_feature_space(const std::vector<dataset::LabeledInstance>& instances,
                                 bool generalize, std::size_t k) {
  if (k < 1) throw std::invalid_argument("build_feature_space: k must be at least 1");
  std::uint64_t n_pos = 0, n_neg = 0;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> presence;  // path -> (pos, neg)
  for (const dataset::LabeledInstance& inst : instances) {
    (inst.label ? n_pos : n_neg)++;
    for (const std::string& f : instance_features(inst, generalize)) {
      auto& cell = presence[f];
      (inst.label ? cell.first : cell.second)++;
    }
  }
  if (presence.empty()) throw std::runtime_error("build_feature_space: no paths in any instance");

  std::vector<std::pair<double, const std::string*>> scored;
  scored.reserve(presence.size());
  for (const auto& [path, cell] : presence) {
    double score = chi2_from_table(cell.first, cell.second, n_pos - cell.first, n_neg - cell.second);
    scored.emplace_back(score, &path);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.first != rhs.first) return lhs.first > rhs.first;
    return *lhs.second < *rhs.second;
  });
  if (scored.size() > k) scored.resize(k);

  FeatureSpace space;
  space.generalized = generalize;
  space.paths.reserve(scored.size());
  space.scores.reserve(scored.size());
  for (const auto& [score, path] : scored) {
    space.ids.emplace(*path, space.size());
    space.paths.push_back(*path);
    space.scores.push_back(score);
  }
  return space;
}

SparseVector vectorize(const dataset::LabeledInstance& instance, const FeatureSpace& space,
                       bool generalize) {
  if (generalize != space.generalized)
    throw std::invalid_argument("vectorize: generalize flag does not match the feature space");
  std::map<int, double> acc;
  for (const auto& [path, count] : instance.paths) {
    if (generalize) {
      for (const DepPath& variant : generalize_path(DepPath::parse(path))) {
        int id = space.id_of(variant.render());
        if (id >= 0) acc[id] += static_cast<double>(count);
      }
    } else {
      int id = space.id_of(path);
      if (id >= 0) acc[id] += static_cast<double>(count);
    }
  }
  SparseVector v;
  v.items.assign(acc.begin(), acc.end());
  return v;
}

void FeatureSpace::save_tsv(std::ostream& out) const {
  out << kFeaturesFormat << "\n";
  for (int id = 0; id < size(); ++id)
    out << paths[static_cast<std::size_t>(id)] << '\t' << id << '\t'
        << scores[static_cast<std::size_t>(id)] << '\n';
}

FeatureSpace FeatureSpace::load_tsv(std::istream& in) {
  FeatureSpace space;
  std::string line;
  std::size_t line_no = 0;
  bool version_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line_no == 1) {
        if (line != kFeaturesFormat)
          throw std::runtime_error("unsupported feature-space format: " + line);
        version_seen = true;
      }
      continue;
    }
    if (!version_seen) throw std::runtime_error("feature-space file missing format-version header");
    std::vector<std::string> cols = util::split(line, '\t');
    if (cols.size() != 3)
      throw std::runtime_error("feature-space line " + std::to_string(line_no) + ": expected 3 columns");
    int id = std::stoi(cols[1]);
    if (id != space.size())
      throw std::runtime_error("feature-space line " + std::to_string(line_no) + ": ids must be dense");
    space.ids.emplace(cols[0], id);
    space.paths.push_back(cols[0]);
    space.scores.push_back(std::stod(cols[2]));
  }
  return space;
}

}  // namespace hype::features
