// Command-line pipeline: extract-paths, build-dataset, train, evaluate,
// analyze-paths. Every run is a deterministic function of its inputs, the
// resolved configuration and the seed, and writes that configuration beside
// its outputs.
#pragma once

#include <string>
#include <vector>

namespace hype::cli {

// argv without the program name; returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace hype::cli
