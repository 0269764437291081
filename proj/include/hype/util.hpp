// Small shared helpers: string splitting, deterministic RNG draws, atomic file writes.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hype::util {

std::vector<std::string> split(std::string_view s, char sep);

// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string lowercase(std::string_view s);

std::string trim(std::string_view s);

// Deterministic bounded draw. std::uniform_int_distribution is not portable
// across standard libraries; mt19937_64's raw output is.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// Writes via a temp file in the same directory, then renames over the target.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace hype::util
