#include "hype/embeddings.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "hype/util.hpp"

namespace hype::baselines {

const Eigen::VectorXd* WordEmbeddings::find(const std::string& word) const {
  auto it = index.find(word);
  return it == index.end() ? nullptr : &vectors[static_cast<std::size_t>(it->second)];
}

namespace {

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != nullptr && *end == '\0' && end != s.c_str();
}

}  // namespace

WordEmbeddings load_embeddings(std::istream& in) {
  WordEmbeddings emb;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = util::split_ws(line);
    if (fields.empty()) continue;
    if (first_content_line) {
      first_content_line = false;
      if (fields.size() == 2 && is_integer(fields[0]) && is_integer(fields[1])) continue;  // header
    }
    if (fields.size() < 2)
      throw std::runtime_error("embeddings line " + std::to_string(line_no) + ": token plus at least one value required");
    const int dim = static_cast<int>(fields.size()) - 1;
    if (emb.dim == 0)
      emb.dim = dim;
    else if (dim != emb.dim)
      throw std::runtime_error("embeddings line " + std::to_string(line_no) + ": expected " +
                               std::to_string(emb.dim) + " values, got " + std::to_string(dim));
    if (emb.index.count(fields[0])) continue;  // first entry wins
    Eigen::VectorXd v(emb.dim);
    for (int i = 0; i < emb.dim; ++i) {
      double value;
      if (!parse_double(fields[static_cast<std::size_t>(i) + 1], value))
        throw std::runtime_error("embeddings line " + std::to_string(line_no) + ": bad value '" +
                                 fields[static_cast<std::size_t>(i) + 1] + "'");
      v[i] = value;
    }
    emb.index.emplace(fields[0], static_cast<int>(emb.vectors.size()));
    emb.vectors.push_back(std::move(v));
  }
  if (emb.vectors.empty()) throw std::runtime_error("embeddings file contains no entries");
  return emb;
}

WordEmbeddings load_embeddings_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embeddings file: " + path);
  return load_embeddings(in);
}

PairFeatureMethod pair_feature_method_from_string(const std::string& name) {
  if (name == "concat") return PairFeatureMethod::Concat;
  if (name == "diff") return PairFeatureMethod::Diff;
  if (name == "dot") return PairFeatureMethod::Dot;
  throw std::invalid_argument("unknown pair feature method: " + name);
}

std::string to_string(PairFeatureMethod method) {
  switch (method) {
    case PairFeatureMethod::Concat: return "concat";
    case PairFeatureMethod::Diff: return "diff";
    case PairFeatureMethod::Dot: return "dot";
  }
  return "concat";
}

PairFeatures distributional_features(const std::string& x, const std::string& y,
                                     const WordEmbeddings& embeddings, PairFeatureMethod method) {
  PairFeatures out;
  const Eigen::VectorXd* vx = embeddings.find(x);
  const Eigen::VectorXd* vy = embeddings.find(y);
  out.oov_x = vx == nullptr;
  out.oov_y = vy == nullptr;
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(embeddings.dim);
  const Eigen::VectorXd& ex = vx ? *vx : zero;
  const Eigen::VectorXd& ey = vy ? *vy : zero;
  switch (method) {
    case PairFeatureMethod::Concat:
      out.values.resize(2 * embeddings.dim);
      out.values << ex, ey;
      break;
    case PairFeatureMethod::Diff:
      out.values = ey - ex;
      break;
    case PairFeatureMethod::Dot:
      out.values.resize(1);
      out.values[0] = ex.dot(ey);
      break;
  }
  return out;
}

}  // namespace hype::baselines
