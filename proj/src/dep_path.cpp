#include "hype/dep_path.hpp"

#include <stdexcept>

#include "hype/util.hpp"

namespace hype::corpus {

char dir_char(Dir d) { return static_cast<char>(d); }

Dir dir_from_char(char c) {
  switch (c) {
    case '<': return Dir::Up;
    case '>': return Dir::Down;
    case '-': return Dir::Apex;
    default: throw std::invalid_argument(std::string("invalid direction character: ") + c);
  }
}

PathEdge PathEdge::full(std::string lemma, std::string pos, std::string dep, Dir dir) {
  PathEdge e;
  e.shape = EdgeShape::Full;
  e.lemma = std::move(lemma);
  e.pos = std::move(pos);
  e.dep = std::move(dep);
  e.dir = dir;
  return e;
}

PathEdge PathEdge::pos_only(std::string pos) {
  PathEdge e;
  e.shape = EdgeShape::PosOnly;
  e.pos = std::move(pos);
  e.dir = Dir::Apex;
  return e;
}

PathEdge PathEdge::wildcard() {
  PathEdge e;
  e.shape = EdgeShape::Wildcard;
  e.lemma = "*";
  e.dir = Dir::Apex;
  return e;
}

std::string PathEdge::render() const {
  switch (shape) {
    case EdgeShape::Wildcard: return "*";
    case EdgeShape::PosOnly: return pos;
    case EdgeShape::Full: break;
  }
  std::string out;
  out.reserve(lemma.size() + pos.size() + dep.size() + 4);
  out += lemma;
  out += '/';
  out += pos;
  out += '/';
  out += dep;
  out += '/';
  out += dir_char(dir);
  return out;
}

PathEdge PathEdge::parse(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty path edge");
  if (token == "*") return wildcard();
  // A full edge carries three separators; the lemma itself may contain '/',
  // so the pos/dep/dir fields are taken from the right.
  std::size_t p3 = token.rfind('/');
  if (p3 == std::string_view::npos) return pos_only(std::string(token));
  std::size_t p2 = p3 > 0 ? token.rfind('/', p3 - 1) : std::string_view::npos;
  std::size_t p1 = (p2 != std::string_view::npos && p2 > 0) ? token.rfind('/', p2 - 1)
                                                            : std::string_view::npos;
  if (p2 == std::string_view::npos || p1 == std::string_view::npos)
    throw std::invalid_argument("malformed path edge: " + std::string(token));
  if (token.size() != p3 + 2)
    throw std::invalid_argument("malformed path edge (direction must be one character): " +
                                std::string(token));
  PathEdge e;
  e.shape = EdgeShape::Full;
  e.lemma = std::string(token.substr(0, p1));
  e.pos = std::string(token.substr(p1 + 1, p2 - p1 - 1));
  e.dep = std::string(token.substr(p2 + 1, p3 - p2 - 1));
  e.dir = dir_from_char(token[p3 + 1]);
  return e;
}

std::string DepPath::render() const {
  std::string out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ' ';
    out += edges[i].render();
  }
  return out;
}

DepPath DepPath::parse(std::string_view s) {
  DepPath p;
  for (const std::string& tok : util::split_ws(s)) p.edges.push_back(PathEdge::parse(tok));
  if (p.edges.empty()) throw std::invalid_argument("empty dependency path");
  const PathEdge& first = p.edges.front();
  const PathEdge& last = p.edges.back();
  bool x_first = first.shape == EdgeShape::Full && first.lemma == "X";
  bool y_last = last.shape == EdgeShape::Full && last.lemma == "Y";
  p.satellite = !(x_first && y_last);
  return p;
}

}  // namespace hype::corpus
