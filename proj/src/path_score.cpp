#include "hype/path_score.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hype::analysis {

double path_score(const network::NetworkParams& params, const corpus::DepPath& path) {
  Eigen::VectorXd o_p = network::path_vector(params, network::encode_path(params, path));
  Eigen::VectorXd v_xy;
  if (params.mode == network::Mode::Integrated) {
    // v_xy = [0, o_p, 0]
    const Eigen::Index d_w = params.word.dim();
    v_xy = Eigen::VectorXd::Zero(2 * d_w + o_p.size());
    v_xy.segment(d_w, o_p.size()) = o_p;
  } else {
    v_xy = o_p;
  }
  return network::classify(params.classifier, v_xy)[1];
}

std::vector<PathScore> rank_paths(const network::NetworkParams& params,
                                  const std::vector<std::string>& rendered_paths, std::size_t k) {
  if (k < 1) throw std::invalid_argument("rank_paths: k must be at least 1");
  std::set<std::string> distinct(rendered_paths.begin(), rendered_paths.end());
  std::vector<PathScore> scored;
  scored.reserve(distinct.size());
  for (const std::string& path : distinct)
    scored.push_back({path, path_score(params, corpus::DepPath::parse(path))});
  std::stable_sort(scored.begin(), scored.end(), [](const PathScore& lhs, const PathScore& rhs) {
    if (lhs.score != rhs.score) return lhs.score > rhs.score;
    return lhs.path < rhs.path;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace hype::analysis
