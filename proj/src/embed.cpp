#include "hyparc/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <unordered_map>

#include "hyparc/error.hpp"
#include "hyparc/surface.hpp"

namespace hyparc {

double Quadrant::scale(int k) const { return std::exp(-epsilon * k * step); }

double Quadrant::distance(const ConePoint& a, const ConePoint& b) const {
  if (a.z == b.z && a.k == b.k) return 0.0;
  if (a.z == b.z) return std::abs(a.k - b.k) * step;
  const double ta = scale(a.k), tb = scale(b.k);
  const double rho = net->dist(arc[a.z], arc[b.z]);
  return 2.0 / epsilon * std::log((rho + std::max(ta, tb)) / std::sqrt(ta * tb));
}

Quadrant quadrant_net(const Net& net, const Arc& arc, int levels, double step, double epsilon) {
  if (arc.empty()) throw usage_error("quadrant over an empty arc");
  if (step <= 0 || epsilon <= 0 || levels < 0) throw usage_error("quadrant needs step > 0, epsilon > 0, levels >= 0");
  Quadrant q{&net, arc, levels, step, epsilon, {}};
  for (std::size_t z = 0; z < arc.size(); ++z)
    for (int k = 0; k <= levels; ++k) q.points.push_back({z, k});
  return q;
}

Vertex ray_map(const BoundaryNet& net, PointId z, int k, double step) {
  auto path = net.witness_path(z);
  const auto at = static_cast<long>(std::lround(k * step));
  if (at < 0 || at >= static_cast<long>(path.size()))
    throw budget_error("witness depth exhausted at level " + std::to_string(k) + "; build a deeper net");
  return path[static_cast<std::size_t>(at)];
}

double pair_lambda(double source, double image) {
  double up = image / (source + 1.0);
  double down = 0.5 * (-image + std::sqrt(image * image + 4.0 * source));
  return std::max({1.0, up, down});
}

ConeEmbedding embed_quadrant(const BoundaryNet& net, const Arc& arc, int levels, double step) {
  ConeEmbedding emb;
  emb.quadrant = quadrant_net(net, arc, levels, step, net.params.epsilon);
  emb.host = net.host.get();
  std::vector<std::vector<Vertex>> paths(arc.size());
  for (std::size_t z = 0; z < arc.size(); ++z) paths[z] = net.witness_path(arc[z]);
  for (const auto& c : emb.quadrant.points) {
    const auto at = static_cast<long>(std::lround(c.k * step));
    if (at >= static_cast<long>(paths[c.z].size()))
      throw budget_error("witness depth exhausted at level " + std::to_string(c.k) + "; build a deeper net");
    emb.image.push_back(paths[c.z][static_cast<std::size_t>(at)]);
  }
  project_to_cayley(emb, *net.host);
  emb.distortion = distortion_audit(emb);
  return emb;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> pair_sample(std::size_t n, std::size_t max_pairs,
                                                             std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n < 2) return out;
  if (n * (n - 1) / 2 <= max_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
  }
  std::mt19937_64 rng(seed);
  while (out.size() < max_pairs) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i != j) out.emplace_back(std::min(i, j), std::max(i, j));
  }
  return out;
}

struct Scan {
  std::vector<std::size_t> slot;  // point -> row of the distance table
  DistanceTable table;
};

Scan image_table(const ConeEmbedding& emb, bool parallel) {
  const Graph& g = emb.host->graph;
  Scan s;
  std::vector<Vertex> uniq(emb.image);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (Vertex v : emb.image)
    s.slot.push_back(static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), v) - uniq.begin()));
  s.table = parallel ? distance_table(g, uniq, uniq) : distance_table_serial(g, uniq, uniq);
  return s;
}

void finish(Distortion& d, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
            const std::vector<double>& src, const std::vector<double>& img) {
  double c = 0.0;
  for (std::size_t q = 0; q < pairs.size(); ++q)
    c = std::max({c, img[q] - d.lambda * src[q], src[q] / d.lambda - img[q]});
  d.c = c;
  d.pairs = pairs.size();
}

}  // namespace

Distortion distortion_audit_serial(const ConeEmbedding& emb, std::size_t max_pairs, std::uint64_t seed) {
  Distortion d;
  auto pairs = pair_sample(emb.image.size(), max_pairs, seed);
  if (pairs.empty()) return d;
  auto scan = image_table(emb, false);
  std::vector<double> src(pairs.size()), img(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    auto [i, j] = pairs[q];
    src[q] = emb.quadrant.distance(emb.quadrant.points[i], emb.quadrant.points[j]);
    img[q] = scan.table.at(scan.slot[i], scan.slot[j]);
    double l = pair_lambda(src[q], img[q]);
    if (l > d.lambda) d.lambda = l, d.a = i, d.b = j;
  }
  finish(d, pairs, src, img);
  return d;
}

Distortion distortion_audit(const ConeEmbedding& emb, std::size_t max_pairs, std::uint64_t seed) {
  Distortion d;
  auto pairs = pair_sample(emb.image.size(), max_pairs, seed);
  if (pairs.empty()) return d;
  auto scan = image_table(emb, true);
  std::vector<double> src(pairs.size()), img(pairs.size()), lam(pairs.size());
  const auto np = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static)
  for (long q = 0; q < np; ++q) {
    auto [i, j] = pairs[static_cast<std::size_t>(q)];
    auto u = static_cast<std::size_t>(q);
    src[u] = emb.quadrant.distance(emb.quadrant.points[i], emb.quadrant.points[j]);
    img[u] = scan.table.at(scan.slot[i], scan.slot[j]);
    lam[u] = pair_lambda(src[u], img[u]);
  }
  for (std::size_t q = 0; q < pairs.size(); ++q)
    if (lam[q] > d.lambda) d.lambda = lam[q], d.a = pairs[q].first, d.b = pairs[q].second;
  finish(d, pairs, src, img);
  return d;
}

void project_to_cayley(ConeEmbedding& emb, const CuspedBall& ball) {
  emb.shadow.clear();
  emb.offset.clear();
  emb.C3 = 0;
  std::unordered_map<Vertex, std::pair<Vertex, std::int32_t>> memo;
  for (Vertex v : emb.image) {
    auto it = memo.find(v);
    if (it == memo.end()) {
      std::pair<Vertex, std::int32_t> best{v, 0};
      if (!ball.is_cayley(v)) {
        const int level = ball.point(v).level;
        auto d = bfs(ball.graph, v, level);
        best = {kUnreached, level + 1};
        for (Vertex u = 0; u < ball.cayley.size(); ++u) {
          auto du = d[static_cast<std::size_t>(u)];
          if (du != kUnreached && du < best.second) best = {u, du};
        }
        if (best.first == kUnreached)
          throw contract_error("cusp-deep image point without a Cayley vertex in the ball (clearance failure)");
      }
      it = memo.emplace(v, best).first;
    }
    emb.shadow.push_back(it->second.first);
    emb.offset.push_back(it->second.second);
    emb.C3 = std::max(emb.C3, it->second.second);
  }
}

TransversalityProfile transversality_audit(const std::vector<Vertex>& points, const CayleyBall& ball,
                                           const std::vector<std::vector<int>>& subsets, const std::vector<int>& Ms) {
  TransversalityProfile prof;
  prof.M = Ms;
  std::sort(prof.M.begin(), prof.M.end());
  prof.eta.assign(prof.M.size(), 0.0);
  prof.worst_fragment.assign(prof.M.size(), 0);
  if (points.empty() || prof.M.empty()) return prof;
  const int maxM = std::max(0, prof.M.back());

  std::vector<Vertex> uniq(points);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  auto table = distance_table(ball.graph, uniq, uniq);
  for (std::size_t i = 0; i < uniq.size(); ++i)
    for (std::size_t j = i + 1; j < uniq.size(); ++j)
      prof.points_diameter = std::max(prof.points_diameter, static_cast<double>(table.at(i, j)));

  std::size_t fragment_base = 0;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    auto frags = coset_fragments(ball, subsets[s], static_cast<int>(s));
    std::vector<std::int32_t> owner(static_cast<std::size_t>(ball.size()), -1);
    for (std::size_t f = 0; f < frags.size(); ++f)
      for (Vertex v : frags[f].members) owner[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(f);
    // fragment -> (point slot, distance)
    std::unordered_map<std::int32_t, std::vector<std::pair<std::size_t, int>>> hits;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      auto d = bfs(ball.graph, uniq[i], maxM);
      std::unordered_map<std::int32_t, int> nearest;
      for (std::size_t v = 0; v < d.size(); ++v) {
        if (d[v] == kUnreached || owner[v] < 0) continue;
        auto [it, fresh] = nearest.emplace(owner[v], d[v]);
        if (!fresh) it->second = std::min(it->second, d[v]);
      }
      for (auto [f, dist] : nearest) hits[f].emplace_back(i, dist);
    }
    std::vector<std::int32_t> order;
    for (const auto& kv : hits) order.push_back(kv.first);
    std::sort(order.begin(), order.end());
    for (std::int32_t f : order) {
      const auto& h = hits[f];
      for (std::size_t m = 0; m < prof.M.size(); ++m) {
        double diam = 0.0;
        for (std::size_t x = 0; x < h.size(); ++x) {
          if (h[x].second > prof.M[m]) continue;
          for (std::size_t y = x + 1; y < h.size(); ++y)
            if (h[y].second <= prof.M[m])
              diam = std::max(diam, static_cast<double>(table.at(h[x].first, h[y].first)));
        }
        if (diam > prof.eta[m]) {
          prof.eta[m] = diam;
          prof.worst_fragment[m] = fragment_base + static_cast<std::size_t>(f);
        }
      }
    }
    fragment_base += frags.size();
  }
  prof.non_transversal = prof.points_diameter > 0 && prof.eta.front() >= prof.points_diameter;
  return prof;
}

ConedOff coned_off(const CayleyBall& ball, const std::vector<std::vector<int>>& subsets) {
  ConedOff c;
  c.ball = &ball;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    auto frags = coset_fragments(ball, subsets[s], static_cast<int>(s));
    for (auto& f : frags)
      if (f.members.size() > 1) c.fragments.push_back(std::move(f));
  }
  c.hubs_from = ball.size();
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < ball.size(); ++v)
    for (Vertex u : ball.graph.neighbors(v))
      if (v < u) edges.emplace_back(v, u);
  for (std::size_t f = 0; f < c.fragments.size(); ++f) {
    const Vertex hub = c.hubs_from + static_cast<Vertex>(f);
    for (Vertex v : c.fragments[f].members) edges.emplace_back(v, hub);
  }
  c.graph = Graph::from_edges(c.hubs_from + static_cast<Vertex>(c.fragments.size()), std::move(edges));
  return c;
}

std::vector<double> ConedOff::distances_from(Vertex v) const {
  // Lengths in half units: Cayley edges 2, spokes 1.
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> d(static_cast<std::size_t>(graph.size()), kInf);
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[static_cast<std::size_t>(v)] = 0;
  pq.push({0, v});
  while (!pq.empty()) {
    auto [dv, x] = pq.top();
    pq.pop();
    if (dv > d[static_cast<std::size_t>(x)]) continue;
    for (Vertex y : graph.neighbors(x)) {
      std::int64_t w = (x >= hubs_from || y >= hubs_from) ? 1 : 2;
      if (dv + w < d[static_cast<std::size_t>(y)]) {
        d[static_cast<std::size_t>(y)] = dv + w;
        pq.push({dv + w, y});
      }
    }
  }
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] == kInf ? INFINITY : 0.5 * static_cast<double>(d[i]);
  return out;
}

std::unique_ptr<ConedOffBall> coned_off_ball(const Presentation& p, int R, std::size_t vertex_budget) {
  auto out = std::make_unique<ConedOffBall>();
  out->ball = cayley_ball(p, R, vertex_budget);
  out->coned = coned_off(out->ball, p.parabolic);
  return out;
}

PersistenceReport persistence_check(const std::vector<Vertex>& points, const MetricMatrix& source,
                                    const ConedOff& coned) {
  PersistenceReport rep;
  if (points.empty()) return rep;
  if (source.n != points.size()) throw usage_error("source metric does not match the point list");
  rep.empty = false;
  const std::size_t n = points.size();
  std::vector<std::vector<double>> rows(n);
  const auto nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nn; ++i) {
    auto d = coned.distances_from(points[static_cast<std::size_t>(i)]);
    auto& row = rows[static_cast<std::size_t>(i)];
    for (Vertex u : points) row.push_back(d[static_cast<std::size_t>(u)]);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> src, img;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      src.push_back(source(i, j));
      img.push_back(rows[i][j]);
      rep.image_diameter = std::max(rep.image_diameter, rows[i][j]);
      rep.source_diameter = std::max(rep.source_diameter, source(i, j));
      double l = pair_lambda(source(i, j), rows[i][j]);
      if (l > rep.distortion.lambda) rep.distortion.lambda = l, rep.distortion.a = i, rep.distortion.b = j;
    }
  finish(rep.distortion, pairs, src, img);
  rep.collapse = rep.image_diameter <= 1.0 && rep.source_diameter >= 4.0;
  return rep;
}

std::vector<double> witness_angles(const BoundaryNet& net) {
  const CuspedBall& host = *net.host;
  const SurfaceGroup* sg = host.presentation ? surface_group(*host.presentation) : nullptr;
  if (!sg) return {};
  std::vector<double> out;
  for (PointId a = 0; a < net.size(); ++a) {
    Vertex v = net.witness[a];
    if (!host.is_cayley(v)) v = host.point(v).cayley;
    out.push_back(std::arg(sg->evaluate(host.cayley.word(v)).origin_image()));
  }
  return out;
}

Arc angular_arc(const BoundaryNet& net) {
  auto angle = witness_angles(net);
  if (angle.empty()) throw usage_error("angular order needs a surface group");
  Arc order(net.size());
  for (PointId a = 0; a < order.size(); ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](PointId x, PointId y) {
    return angle[x] != angle[y] ? angle[x] < angle[y] : x < y;
  });
  const double start = angle[order.front()];
  Arc arc;
  for (PointId a : order)
    if (angle[a] - start < std::numbers::pi) arc.push_back(a);
  return arc;
}

}  // namespace hyparc
