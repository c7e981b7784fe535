#include "hyparc/cusped.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>

#include "hyparc/error.hpp"

namespace hyparc {

double strip_distance(double t, double h1, double h2) {
  double d = h1 - h2;
  return std::acosh(1.0 + (d * d + t * t) / (2.0 * h1 * h2));
}

int default_horoball_depth(int R) {
  if (R <= 0) return 2;
  return static_cast<int>(std::bit_width(static_cast<unsigned>(2 * R - 1))) + 2;
}

int clamp_depth(int K, int fragment_diameter) {
  int k = 0;
  while (k < K && (1L << (k + 1)) <= 2L * fragment_diameter) ++k;
  return k;
}

std::vector<std::int32_t> Horoball::distances_from(std::size_t i, int k) const {
  const std::size_t m = base.size();
  const std::size_t levels = static_cast<std::size_t>(depth) + 1;
  std::vector<std::int32_t> dist(m * levels, kUnreached);
  std::vector<std::size_t> queue{static_cast<std::size_t>(k) * m + i};
  dist[queue[0]] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t node = queue[head];
    std::size_t lvl = node / m, at = node % m;
    std::int32_t d = dist[node] + 1;
    auto visit = [&](std::size_t u) {
      if (dist[u] != kUnreached) return;
      dist[u] = d;
      queue.push_back(u);
    };
    if (lvl > 0) visit(node - m);
    if (lvl + 1 < levels) visit(node + m);
    const long reach = 1L << lvl;
    const std::uint16_t* row = metric.data() + at * m;
    for (std::size_t j = 0; j < m; ++j)
      if (j != at && row[j] <= reach) visit(lvl * m + j);
  }
  return dist;
}

Horoball build_horoball(std::vector<Vertex> base, std::vector<std::uint16_t> metric, int K) {
  if (base.empty()) throw usage_error("horoball over an empty fragment");
  if (K < 1) throw usage_error("horoball depth must be at least 1");
  Horoball h;
  h.base = std::move(base);
  h.metric = std::move(metric);
  int diameter = 0;
  for (auto d : h.metric)
    if (d != 0xffff) diameter = std::max<int>(diameter, d);
  h.requested_depth = K;
  h.depth = clamp_depth(K, diameter);
  return h;
}

Horoball build_horoball(const CayleyBall& ball, const CosetFragment& f, const std::vector<int>& subset, int K) {
  Horoball h = build_horoball(f.members, fragment_metric(ball, f, subset), K);
  h.peripheral = f.peripheral;
  h.d_O = f.distance;
  h.nearest = static_cast<std::size_t>(std::find(f.members.begin(), f.members.end(), f.nearest) - f.members.begin());
  return h;
}

Vertex CuspedBall::vertex(const CuspedPoint& p) const {
  if (p.horoball < 0 || p.level == 0) return p.cayley;
  const Horoball& h = horoballs[static_cast<std::size_t>(p.horoball)];
  auto it = std::lower_bound(h.base.begin(), h.base.end(), p.cayley);
  if (it == h.base.end() || *it != p.cayley || p.level > h.depth) return kUnreached;
  return first_vertex[static_cast<std::size_t>(p.horoball)] +
         static_cast<Vertex>(static_cast<std::size_t>(p.level - 1) * h.size() +
                             static_cast<std::size_t>(it - h.base.begin()));
}

CuspedPoint CuspedBall::point(Vertex v) const {
  if (is_cayley(v)) return {v, -1, 0};
  auto it = std::upper_bound(first_vertex.begin(), first_vertex.end(), v);
  auto h = static_cast<std::size_t>(it - first_vertex.begin()) - 1;
  auto off = static_cast<std::size_t>(v - first_vertex[h]);
  const std::size_t m = horoballs[h].size();
  return {horoballs[h].base[off % m], static_cast<int>(h), static_cast<int>(off / m) + 1};
}

const std::vector<std::int32_t>& CuspedBall::distances_from(Vertex v) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->rows.find(v); it != cache_->rows.end()) return it->second;
  }
  auto d = bfs(graph, v);
  std::lock_guard lock(cache_->mutex);
  return cache_->rows.emplace(v, std::move(d)).first->second;
}

std::vector<int> CuspedBall::horoballs_at(Vertex v) const {
  std::vector<int> out;
  for (std::size_t h = 0; h < horoballs.size(); ++h)
    if (std::binary_search(horoballs[h].base.begin(), horoballs[h].base.end(), v)) out.push_back(static_cast<int>(h));
  return out;
}

CuspedBall cusp_over(CayleyBall piece, const std::vector<std::vector<int>>& subsets, int K) {
  CuspedBall out;
  out.presentation = piece.presentation;
  out.cayley = std::move(piece);
  out.subsets = subsets;
  const CayleyBall& ball = out.cayley;

  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < ball.size(); ++v)
    for (Vertex u : ball.graph.neighbors(v))
      if (v < u) edges.emplace_back(v, u);

  Vertex next = ball.size();
  std::size_t clamped = 0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    for (auto& f : coset_fragments(ball, subsets[s], static_cast<int>(s))) {
      out.fragments.push_back(f);
      Horoball h = build_horoball(ball, f, subsets[s], K);
      h.fragment = out.fragments.size() - 1;
      if (h.clamped()) ++clamped;
      if (h.depth == 0) continue;
      const std::size_t m = h.size();
      out.first_vertex.push_back(next);
      auto id = [&](std::size_t i, int level) {
        return level == 0 ? h.base[i] : next + static_cast<Vertex>(static_cast<std::size_t>(level - 1) * m + i);
      };
      for (int k = 0; k < h.depth; ++k)
        for (std::size_t i = 0; i < m; ++i) edges.emplace_back(id(i, k), id(i, k + 1));
      for (int k = 1; k <= h.depth; ++k)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = i + 1; j < m; ++j)
            if (h.horizontal(i, j, k)) edges.emplace_back(id(i, k), id(j, k));
      next += static_cast<Vertex>(m * static_cast<std::size_t>(h.depth));
      out.horoballs.push_back(std::move(h));
    }
  }
  if (clamped)
    out.warnings.push_back(std::to_string(clamped) + " horoball depths clamped to twice the fragment diameter");
  out.graph = Graph::from_edges(next, std::move(edges));
  return out;
}

CuspedBall cusped_ball(const Presentation& p, int R, int K, std::size_t vertex_budget) {
  if (K < 0) K = default_horoball_depth(R);
  return cusp_over(cayley_ball(p, R, vertex_budget), p.parabolic, K);
}

namespace {

Vertex ray_point(const CuspedBall& ball, int horoball, int T) {
  const Horoball& h = ball.horoballs.at(static_cast<std::size_t>(horoball));
  if (T > h.depth)
    throw usage_error("busemann truncation " + std::to_string(T) + " exceeds horoball depth " + std::to_string(h.depth));
  return ball.vertex({h.base[h.nearest], horoball, T});
}

}  // namespace

std::int32_t busemann(const CuspedBall& ball, int horoball, Vertex x, int T) {
  auto d = ball.distances_from(ray_point(ball, horoball, T))[static_cast<std::size_t>(x)];
  if (d == kUnreached) throw contract_error("busemann point not connected to the ray");
  return d - T;
}

SandwichReport busemann_sandwich(const CuspedBall& ball, int horoball, int T) {
  const Horoball& h = ball.horoballs.at(static_cast<std::size_t>(horoball));
  SandwichReport rep;
  rep.horoball = horoball;
  rep.T = T;
  rep.d_O = h.d_O;
  const auto& dist = ball.distances_from(ray_point(ball, horoball, T));
  const Vertex lo = ball.first_vertex[static_cast<std::size_t>(horoball)];
  const Vertex hi = lo + static_cast<Vertex>(h.size() * static_cast<std::size_t>(h.depth));
  std::int32_t inside = INT_MIN, outside = INT_MIN;
  for (Vertex x = 0; x < ball.size(); ++x) {
    if (dist[static_cast<std::size_t>(x)] == kUnreached) continue;
    ++rep.scanned;
    std::int32_t beta = dist[static_cast<std::size_t>(x)] - T;
    bool in_O = (x >= lo && x < hi) || (ball.is_cayley(x) && std::binary_search(h.base.begin(), h.base.end(), x));
    if (x >= lo && x < hi) inside = std::max(inside, beta + h.d_O);
    if (!in_O) outside = std::max(outside, -h.d_O - beta + 1);
  }
  rep.c_inside = inside == INT_MIN ? 0 : inside;
  rep.c_outside = outside == INT_MIN ? 0 : outside;
  rep.c_hat = std::max(rep.c_inside, rep.c_outside);

  for (int t = 1; t < T && rep.monotone_in_T; ++t) {
    const auto& a = ball.distances_from(ray_point(ball, horoball, t));
    const auto& b = ball.distances_from(ray_point(ball, horoball, t + 1));
    for (std::size_t x = 0; x < a.size(); ++x)
      if (a[x] != kUnreached && b[x] != kUnreached && b[x] - (t + 1) > a[x] - t) {
        rep.monotone_in_T = false;
        break;
      }
  }
  return rep;
}

}  // namespace hyparc
