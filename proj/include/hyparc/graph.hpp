#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace hyparc {

using Vertex = std::int32_t;
inline constexpr std::int32_t kUnreached = -1;

/// Undirected graph with unit edge lengths in compressed adjacency form.
/// Neighbour lists are sorted, so traversal order is deterministic.
struct Graph {
  std::vector<std::int64_t> offsets{0};
  std::vector<Vertex> targets;

  Vertex size() const { return static_cast<Vertex>(offsets.size() - 1); }
  std::size_t edge_count() const { return targets.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    auto b = static_cast<std::size_t>(offsets[static_cast<std::size_t>(v)]);
    auto e = static_cast<std::size_t>(offsets[static_cast<std::size_t>(v) + 1]);
    return {targets.data() + b, e - b};
  }

  /// Builds from an edge list; duplicates and self-loops are dropped.
  static Graph from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);
};

/// Breadth-first distances from source, kUnreached beyond limit.
std::vector<std::int32_t> bfs(const Graph& g, Vertex source,
                              std::int32_t limit = std::numeric_limits<std::int32_t>::max());

/// Shortest path with lowest-id predecessor tie-breaking; empty if none.
std::vector<Vertex> shortest_path(const Graph& g, Vertex from, Vertex to);

/// Row-major |sources| x |targets| distance table.
struct DistanceTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int32_t> data;

  std::int32_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Reference implementation: one BFS per source, in order.
DistanceTable distance_table_serial(const Graph& g, const std::vector<Vertex>& sources,
                                    const std::vector<Vertex>& targets);
/// OpenMP version over sources with per-thread scratch; identical output.
DistanceTable distance_table(const Graph& g, const std::vector<Vertex>& sources,
                             const std::vector<Vertex>& targets);

}  // namespace hyparc
