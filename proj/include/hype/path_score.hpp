// Per-path indicativeness: score a path as if it were the pair's only path,
// with the word-embedding slots zeroed in integrated mode.
#pragma once

#include <string>
#include <vector>

#include "hype/network.hpp"

namespace hype::analysis {

struct PathScore {
  std::string path;
  double score = 0.0;  // positive-class probability
};

double path_score(const network::NetworkParams& params, const corpus::DepPath& path);

// Distinct paths ranked by score descending, ties broken by path string; at
// most k results.
std::vector<PathScore> rank_paths(const network::NetworkParams& params,
                                  const std::vector<std::string>& rendered_paths, std::size_t k);

}  // namespace hype::analysis
