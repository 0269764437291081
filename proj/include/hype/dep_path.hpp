// Dependency-path notation: each node on the path between a term pair is an
// edge written as lemma/pos/dep/dir, with X and Y standing in for the terms.
// Wildcarded edges render as a bare "*" and POS-generalized edges as the bare
// POS tag, matching the notation used for generalized path features.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hype::corpus {

// Direction of traversal relative to the path apex (lowest common ancestor):
// Up ("<") moves dependent->head toward the apex, Down (">") moves head->
// dependent away from it, Apex ("-") marks the apex node itself.
enum class Dir : char { Up = '<', Down = '>', Apex = '-' };

char dir_char(Dir d);
Dir dir_from_char(char c);

enum class EdgeShape : std::uint8_t { Full, PosOnly, Wildcard };

struct PathEdge {
  EdgeShape shape = EdgeShape::Full;
  std::string lemma;  // "X"/"Y" at endpoints; "*" when wildcarded
  std::string pos;
  std::string dep;
  Dir dir = Dir::Apex;

  static PathEdge full(std::string lemma, std::string pos, std::string dep, Dir dir);
  static PathEdge pos_only(std::string pos);
  static PathEdge wildcard();

  bool is_endpoint() const { return shape == EdgeShape::Full && (lemma == "X" || lemma == "Y"); }

  std::string render() const;
  static PathEdge parse(std::string_view token);

  bool operator==(const PathEdge&) const = default;
};

struct DepPath {
  std::vector<PathEdge> edges;
  bool satellite = false;  // extended by a single daughter of x or y

  std::string render() const;

  // Inverse of render(); the satellite flag is recovered from the endpoints.
  static DepPath parse(std::string_view s);

  bool operator==(const DepPath&) const = default;
};

}  // namespace hype::corpus
