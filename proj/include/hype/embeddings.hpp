// Word-embedding text files and the distributional term-pair features built
// from them.
#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace hype::baselines {

struct WordEmbeddings {
  int dim = 0;
  std::unordered_map<std::string, int> index;
  std::vector<Eigen::VectorXd> vectors;

  const Eigen::VectorXd* find(const std::string& word) const;
  std::size_t size() const { return vectors.size(); }
};

// One entry per line: token followed by whitespace-separated floats. The
// dimension is inferred from the first entry and enforced afterwards. A
// word2vec-style "count dim" header line is detected and skipped.
WordEmbeddings load_embeddings(std::istream& in);
WordEmbeddings load_embeddings_file(const std::string& path);

enum class PairFeatureMethod { Concat, Diff, Dot };

PairFeatureMethod pair_feature_method_from_string(const std::string& name);
std::string to_string(PairFeatureMethod method);

struct PairFeatures {
  Eigen::VectorXd values;
  bool oov_x = false;  // zero vector substituted for x
  bool oov_y = false;
};

// concat -> [x; y] (2d), diff -> y - x (d), dot -> x.y (1).
PairFeatures distributional_features(const std::string& x, const std::string& y,
                                     const WordEmbeddings& embeddings, PairFeatureMethod method);

}  // namespace hype::baselines
