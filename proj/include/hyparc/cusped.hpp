#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hyparc/cayley.hpp"

namespace hyparc {

/// Distance in the glued-strip horoball between points at horizontal
/// separation t and heights h1, h2 (upper half-plane model).
double strip_distance(double t, double h1, double h2);

/// Default horoball depth for a ball of radius R: ceil(log2(2R)) + 2.
int default_horoball_depth(int R);

/// Combinatorial horoball over a coset fragment. Vertex (i, k) sits above
/// fragment member i at level k; (i,k)-(i,k+1) are joined, and (i,k)-(j,k)
/// whenever the fragment distance is at most 2^k.
struct Horoball {
  int peripheral = 0;
  std::size_t fragment = 0;
  int depth = 0;
  int requested_depth = 0;
  std::vector<Vertex> base;            // Cayley vertices at level 0
  std::vector<std::uint16_t> metric;   // fragment word metric, m x m
  std::int32_t d_O = 0;                // distance from the basepoint
  std::size_t nearest = 0;             // local index of the base vertex nearest w

  std::size_t size() const { return base.size(); }
  bool clamped() const { return depth < requested_depth; }
  std::uint16_t coset_distance(std::size_t i, std::size_t j) const { return metric[i * base.size() + j]; }
  bool horizontal(std::size_t i, std::size_t j, int k) const {
    return static_cast<long>(coset_distance(i, j)) <= (1L << k);
  }
  /// Distances inside this horoball alone from (i, k); entry level*m + j.
  std::vector<std::int32_t> distances_from(std::size_t i, int k) const;
};

/// Largest admissible depth: 2^K may not exceed twice the fragment diameter.
int clamp_depth(int K, int fragment_diameter);

Horoball build_horoball(const CayleyBall& ball, const CosetFragment& f, const std::vector<int>& subset, int K);
/// Horoball over an explicit fragment metric (used for long line fragments).
Horoball build_horoball(std::vector<Vertex> base, std::vector<std::uint16_t> metric, int K);

struct CuspedPoint {
  Vertex cayley = 0;
  int horoball = -1;  // -1: a point of the Cayley graph
  int level = 0;
};

/// Cayley piece plus horoballs over every parabolic coset fragment, with the
/// shortest-path metric of the union graph. Ids below cayley.size() are
/// Cayley vertices; horoball h owns the block starting at first_vertex[h]
/// laid out as (level - 1) * m + i.
struct CuspedBall {
  const Presentation* presentation = nullptr;
  CayleyBall cayley;
  std::vector<std::vector<int>> subsets;
  std::vector<CosetFragment> fragments;
  std::vector<Horoball> horoballs;
  std::vector<Vertex> first_vertex;
  Graph graph;
  Vertex basepoint = 0;
  std::vector<std::string> warnings;

  Vertex size() const { return graph.size(); }
  bool is_cayley(Vertex v) const { return v < cayley.size(); }
  Vertex vertex(const CuspedPoint& p) const;
  CuspedPoint point(Vertex v) const;
  /// Breadth-first distances from v over the union graph, cached.
  const std::vector<std::int32_t>& distances_from(Vertex v) const;
  std::int32_t distance(Vertex u, Vertex v) const { return distances_from(u)[static_cast<std::size_t>(v)]; }
  /// Horoball ids whose base contains the Cayley vertex v.
  std::vector<int> horoballs_at(Vertex v) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<Vertex, std::vector<std::int32_t>> rows;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// K < 0 selects default_horoball_depth(R).
CuspedBall cusped_ball(const Presentation& p, int R, int K = -1, std::size_t vertex_budget = 5'000'000);
/// Glues horoballs over the given generator subsets onto an existing piece.
CuspedBall cusp_over(CayleyBall piece, const std::vector<std::vector<int>>& subsets, int K);

/// Truncated Busemann function d(gamma(T), x) - T for the vertical ray over
/// the base vertex of O nearest the basepoint.
std::int32_t busemann(const CuspedBall& ball, int horoball, Vertex x, int T);

struct SandwichReport {
  int horoball = 0;
  int T = 0;
  std::int32_t d_O = 0;
  /// max over level >= 1 vertices of O of busemann + d_O.
  std::int32_t c_inside = 0;
  /// Smallest C with: busemann <= -d_O - C implies membership in O.
  std::int32_t c_outside = 0;
  std::int32_t c_hat = 0;
  std::size_t scanned = 0;
  bool monotone_in_T = true;
};

/// Exhaustive scan of the ball for the two-sided horoball sandwich.
SandwichReport busemann_sandwich(const CuspedBall& ball, int horoball, int T);

}  // namespace hyparc
