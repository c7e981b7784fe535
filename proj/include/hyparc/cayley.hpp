#pragma once

#include <unordered_map>
#include <vector>

#include "hyparc/graph.hpp"
#include "hyparc/presentation.hpp"

namespace hyparc {

/// A finite piece of the Cayley graph: either the full ball of radius R, or
/// a tube around a family of words. Vertices are numbered in discovery order
/// of a breadth-first search from the identity with letters taken in
/// shortlex order, so the tree path to each vertex is its shortlex-least
/// word inside the piece.
struct CayleyBall {
  const Presentation* presentation = nullptr;
  int radius = 0;
  bool full_ball = true;
  int alphabet_size = 0;

  std::vector<Element> keys;
  std::vector<Vertex> parent;
  std::vector<Letter> via;
  std::vector<std::int32_t> depth;
  /// step[v * alphabet_size + letter_rank(l)] = v.l, or kUnreached.
  std::vector<Vertex> step;
  std::unordered_map<Element, Vertex, ElementHash> index;
  Graph graph;

  Vertex size() const { return static_cast<Vertex>(keys.size()); }
  GroupWord word(Vertex v) const;
  Vertex find(const Element& e) const;
  Vertex neighbor(Vertex v, Letter l) const {
    return step[static_cast<std::size_t>(v) * static_cast<std::size_t>(alphabet_size) +
                static_cast<std::size_t>(letter_rank(l))];
  }
  /// Word distance d_G(u, v) when u^-1 v lies in the ball, else the
  /// distance inside the piece (an upper bound).
  std::int32_t distance(Vertex u, Vertex v) const;
};

/// Exact ball of radius R. Each sphere is expanded in parallel and merged in
/// sequential order, so the output equals cayley_ball_serial.
CayleyBall cayley_ball(const Presentation& p, int R, std::size_t vertex_budget = 5'000'000);
CayleyBall cayley_ball_serial(const Presentation& p, int R, std::size_t vertex_budget = 5'000'000);

/// Union of the prefixes of the given words and their width-neighbourhoods.
CayleyBall cayley_tube(const Presentation& p, const std::vector<GroupWord>& words, int width,
                       std::size_t vertex_budget = 5'000'000);

/// Intersection of a left coset gP with the ball, connected through
/// P-labelled edges.
struct CosetFragment {
  int peripheral = 0;
  std::vector<Vertex> members;  // ascending
  Vertex nearest = 0;           // closest to the identity, shortlex tie-break
  std::int32_t distance = 0;    // d(w, gP) inside the ball
};

/// Partition of the ball into fragments of cosets of the subgroup generated
/// by the given generator subset.
std::vector<CosetFragment> coset_fragments(const CayleyBall& ball, const std::vector<int>& subset,
                                           int peripheral_index = 0);

/// Word metric of the fragment's own P-labelled graph, m x m row-major.
std::vector<std::uint16_t> fragment_metric(const CayleyBall& ball, const CosetFragment& f,
                                           const std::vector<int>& subset);

}  // namespace hyparc
