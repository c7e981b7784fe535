#include "hyparc/graph.hpp"

#include <algorithm>

namespace hyparc {

Graph Graph::from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
  std::vector<std::pair<Vertex, Vertex>> both;
  both.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    both.emplace_back(u, v);
    both.emplace_back(v, u);
  }
  std::sort(both.begin(), both.end());
  both.erase(std::unique(both.begin(), both.end()), both.end());
  Graph g;
  g.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : both) ++g.offsets[static_cast<std::size_t>(u) + 1];
  for (std::size_t i = 1; i < g.offsets.size(); ++i) g.offsets[i] += g.offsets[i - 1];
  g.targets.reserve(both.size());
  for (auto [u, v] : both) g.targets.push_back(v);
  return g;
}

std::vector<std::int32_t> bfs(const Graph& g, Vertex source, std::int32_t limit) {
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.size()), kUnreached);
  std::vector<Vertex> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    auto d = dist[static_cast<std::size_t>(v)];
    if (d >= limit) continue;
    for (Vertex u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] != kUnreached) continue;
      dist[static_cast<std::size_t>(u)] = d + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex from, Vertex to) {
  auto dist = bfs(g, to);
  if (dist[static_cast<std::size_t>(from)] == kUnreached) return {};
  std::vector<Vertex> path{from};
  Vertex v = from;
  while (v != to) {
    for (Vertex u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(v)] - 1) {
        v = u;
        break;
      }
    }
    path.push_back(v);
  }
  return path;
}

namespace {

// BFS that only resets the vertices it touched, so scratch can be reused.
void bfs_into(const Graph& g, Vertex source, std::vector<std::int32_t>& dist, std::vector<Vertex>& queue) {
  queue.clear();
  queue.push_back(source);
  dist[static_cast<std::size_t>(source)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    auto d = dist[static_cast<std::size_t>(v)];
    for (Vertex u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] != kUnreached) continue;
      dist[static_cast<std::size_t>(u)] = d + 1;
      queue.push_back(u);
    }
  }
}

void fill_row(const std::vector<std::int32_t>& dist, const std::vector<Vertex>& targets, std::int32_t* row) {
  for (std::size_t j = 0; j < targets.size(); ++j) row[j] = dist[static_cast<std::size_t>(targets[j])];
}

void reset(std::vector<std::int32_t>& dist, const std::vector<Vertex>& queue) {
  for (Vertex v : queue) dist[static_cast<std::size_t>(v)] = kUnreached;
}

}  // namespace

DistanceTable distance_table_serial(const Graph& g, const std::vector<Vertex>& sources,
                                    const std::vector<Vertex>& targets) {
  DistanceTable t{sources.size(), targets.size(), std::vector<std::int32_t>(sources.size() * targets.size())};
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.size()), kUnreached);
  std::vector<Vertex> queue;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    bfs_into(g, sources[i], dist, queue);
    fill_row(dist, targets, t.data.data() + i * targets.size());
    reset(dist, queue);
  }
  return t;
}

DistanceTable distance_table(const Graph& g, const std::vector<Vertex>& sources,
                             const std::vector<Vertex>& targets) {
  DistanceTable t{sources.size(), targets.size(), std::vector<std::int32_t>(sources.size() * targets.size())};
  const auto n = static_cast<long>(sources.size());
#pragma omp parallel
  {
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.size()), kUnreached);
    std::vector<Vertex> queue;
#pragma omp for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
      bfs_into(g, sources[static_cast<std::size_t>(i)], dist, queue);
      fill_row(dist, targets, t.data.data() + static_cast<std::size_t>(i) * targets.size());
      reset(dist, queue);
    }
  }
  return t;
}

}  // namespace hyparc
