#include "hyparc/audits.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <unordered_map>

#include "hyparc/error.hpp"

namespace hyparc {

SeparationReport separation_audit(const std::vector<ObstacleSet>& family, const Net& net, double epsilon) {
  SeparationReport rep;
  if (family.size() < 2) return rep;
  rep.empty = false;
  rep.inv_C = INFINITY;
  rep.min_relative = INFINITY;
  std::vector<std::unique_ptr<SetDistance>> sd;
  for (const auto& V : family) sd.push_back(net.set_distance(V.members));
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      double rho = INFINITY;
      for (PointId p : family[i].members) rho = std::min(rho, (*sd[j])(p));
      double v = rho * std::exp(epsilon * std::max(family[i].d_H, family[j].d_H));
      if (v < rep.inv_C) {
        rep.inv_C = v;
        rep.a = i;
        rep.b = j;
      }
      rep.min_relative = std::min(rep.min_relative, rho / std::min(family[i].scale, family[j].scale));
      ++rep.pairs;
    }
  rep.L_hat = rep.min_relative > 0 ? 1.0 / rep.min_relative : INFINITY;
  return rep;
}

namespace {

// Number of r/2-balls centred at ball points covering the ball: the best
// of greedy scans in id order and in far-first order, and for small balls
// of the greedy max-coverage rule. Each is an upper bound for the covering
// number.
std::size_t cover_count(const Net& net, PointId c, std::vector<PointId> ball, double r) {
  auto scan = [&](const std::vector<PointId>& order) {
    std::vector<char> covered(order.size(), 0);
    std::size_t n = 0;
    for (std::size_t p = 0; p < order.size(); ++p) {
      if (covered[p]) continue;
      ++n;
      for (std::size_t q = p; q < order.size(); ++q)
        if (!covered[q] && net.dist(order[p], order[q]) <= r / 2) covered[q] = 1;
    }
    return n;
  };
  std::size_t best = scan(ball);
  std::stable_sort(ball.begin(), ball.end(), [&](PointId x, PointId y) { return net.dist(c, x) > net.dist(c, y); });
  best = std::min(best, scan(ball));
  if (ball.size() > 256) return best;

  const std::size_t m = ball.size();
  std::vector<std::vector<std::size_t>> near(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (net.dist(ball[i], ball[j]) <= r / 2) near[i].push_back(j);
  std::vector<char> covered(m, 0);
  std::size_t left = m, n = 0;
  while (left > 0 && n < best) {
    std::size_t pick = 0, gain = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t g = 0;
      for (std::size_t j : near[i]) g += !covered[j];
      if (g > gain) gain = g, pick = i;
    }
    for (std::size_t j : near[pick])
      if (!covered[j]) covered[j] = 1, --left;
    ++n;
  }
  return left == 0 ? std::min(best, n) : best;
}

}  // namespace

DoublingReport doubling_estimate(const Net& net, std::uint64_t seed, std::size_t exhaustive_limit,
                                 std::size_t max_radii, std::size_t sample_centers) {
  DoublingReport rep;
  auto pts = net.points();
  if (pts.empty()) return rep;
  rep.N = 1;
  std::vector<PointId> centers = pts;
  rep.exhaustive = pts.size() <= exhaustive_limit;
  if (!rep.exhaustive) {
    std::mt19937_64 rng(seed);
    std::shuffle(centers.begin(), centers.end(), rng);
    centers.resize(std::min(sample_centers, centers.size()));
    std::sort(centers.begin(), centers.end());
  }
  struct Best {
    std::size_t N = 1;
    std::size_t c = 0;
    double r = 0.0;
  };
  Best total;
  std::size_t samples = 0;
  const auto nc = static_cast<long>(centers.size());
#pragma omp parallel
  {
    Best local;
    std::size_t count = 0;
    std::vector<double> d(pts.size());
    std::vector<PointId> ball;
#pragma omp for schedule(dynamic, 4)
    for (long ci = 0; ci < nc; ++ci) {
      const PointId c = centers[static_cast<std::size_t>(ci)];
      for (std::size_t k = 0; k < pts.size(); ++k) d[k] = net.dist(c, pts[k]);
      std::vector<double> radii(d);
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
      if (!radii.empty() && radii.front() == 0.0) radii.erase(radii.begin());
      std::vector<double> chosen;
      if (radii.size() <= max_radii) chosen = radii;
      else
        for (std::size_t q = 0; q < max_radii; ++q)
          chosen.push_back(radii[q * (radii.size() - 1) / (max_radii - 1)]);
      for (double r : chosen) {
        ball.clear();
        for (std::size_t k = 0; k < pts.size(); ++k)
          if (d[k] <= r) ball.push_back(pts[k]);
        const std::size_t n = cover_count(net, c, ball, r);
        ++count;
        auto at = static_cast<std::size_t>(ci);
        if (n > local.N || (n == local.N && (at < local.c || (at == local.c && r < local.r)))) local = {n, at, r};
      }
    }
#pragma omp critical
    {
      samples += count;
      if (local.N > total.N || (local.N == total.N && (local.c < total.c || (local.c == total.c && local.r < total.r))))
        total = local;
    }
  }
  rep.N = total.N;
  rep.center = centers[total.c];
  rep.radius = total.r;
  rep.samples = samples;
  return rep;
}

namespace {

// Path from a to b with steps at most max_step minimising the largest
// max(rho(a,c), rho(c,b)) along the way; empty if b is unreachable.
std::vector<PointId> minimax_path(const Net& net, PointId a, PointId b, double max_step) {
  if (a == b) return {a};
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::unordered_map<PointId, double> best;
  std::unordered_map<PointId, PointId> parent;
  auto key = [&](PointId c) { return std::max(net.dist(a, c), net.dist(c, b)); };
  best[a] = key(a);
  pq.push({best[a], a});
  std::vector<PointId> nbrs;
  while (!pq.empty()) {
    auto [cost, v] = pq.top();
    pq.pop();
    if (cost > best[v]) continue;
    if (v == b) break;
    net.adjacent(v, nbrs);
    for (PointId u : nbrs) {
      if (net.dist(u, v) > max_step) continue;
      double c = std::max(cost, key(u));
      auto it = best.find(u);
      if (it != best.end() && it->second <= c) continue;
      best[u] = c;
      parent[u] = v;
      pq.push({c, u});
    }
  }
  if (!parent.count(b)) return {};
  std::vector<PointId> path{b};
  for (PointId x = b; x != a;) path.push_back(x = parent[x]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

LinConnReport linconn_estimate(const Net& net, std::uint64_t seed, std::size_t max_pairs) {
  LinConnReport rep;
  rep.h = net.resolution();
  auto pts = net.points();
  std::unordered_map<PointId, std::size_t> comp;
  std::vector<std::vector<PointId>> members;
  std::vector<PointId> nbrs;
  for (PointId s : pts) {
    if (comp.count(s)) continue;
    const std::size_t c = members.size();
    members.emplace_back();
    std::vector<PointId> queue{s};
    comp[s] = c;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      members[c].push_back(queue[head]);
      net.adjacent(queue[head], nbrs);
      for (PointId u : nbrs)
        if (comp.emplace(u, c).second) queue.push_back(u);
    }
  }
  rep.components = members.size();
  rep.disconnected = members.size() > 1;
  rep.component_L.assign(members.size(), 0.0);

  std::vector<std::pair<PointId, PointId>> pairs;
  if (pts.size() <= 64) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (comp[pts[i]] == comp[pts[j]]) pairs.emplace_back(pts[i], pts[j]);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t tries = 0; pairs.size() < max_pairs && tries < 20 * max_pairs; ++tries) {
      PointId a = pts[rng() % pts.size()];
      const auto& m = members[comp[a]];
      PointId b = m[rng() % m.size()];
      if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  for (auto [a, b] : pairs) {
    auto path = minimax_path(net, a, b, rep.h);
    if (path.empty()) continue;
    auto t = net.span_tracker();
    t->reset(path[0]);
    double diam = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) diam = t->add(path[k]);
    double ratio = diam / net.dist(a, b);
    auto c = comp[a];
    rep.component_L[c] = std::max(rep.component_L[c], ratio);
    if (ratio > rep.L) {
      rep.L = ratio;
      rep.a = a;
      rep.b = b;
    }
    ++rep.pairs;
  }
  return rep;
}

Chain chain(const Net& net, PointId a, PointId b) {
  Chain c;
  if (a == b) {
    c.points = {a};
    return c;
  }
  const double rho = net.dist(a, b), step = rho / 2;
  auto path = minimax_path(net, a, b, step);
  if (path.empty()) {
    c.points = {a, b};
    c.resolution_limited = true;
    c.max_gap = rho;
    c.K1 = 1.0;
    return c;
  }
  c.points.push_back(a);
  for (std::size_t i = 0; i + 1 < path.size();) {
    std::size_t j = i + 1;
    for (std::size_t k = path.size() - 1; k > i + 1; --k)
      if (net.dist(path[i], path[k]) <= step) {
        j = k;
        break;
      }
    c.points.push_back(path[j]);
    i = j;
  }
  double diam = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i + 1 < c.points.size()) c.max_gap = std::max(c.max_gap, net.dist(c.points[i], c.points[i + 1]));
    for (std::size_t j = i + 1; j < c.points.size(); ++j) diam = std::max(diam, net.dist(c.points[i], c.points[j]));
  }
  c.K1 = diam / rho;
  return c;
}

PorosityReport porosity_audit(const std::vector<ObstacleSet>& family, const Net& net,
                              const std::vector<double>& scales, double L, std::size_t max_members) {
  PorosityReport rep;
  std::vector<PointId> ball;
  for (std::size_t s = 0; s < family.size(); ++s) {
    const auto& V = family[s];
    auto sd = net.set_distance(V.members);
    const std::size_t stride = std::max<std::size_t>(1, (V.members.size() + max_members - 1) / max_members);
    for (double r : scales) {
      PorosityEntry e;
      e.set = s;
      e.r = r;
      if (r > V.scale * (1 + 1e-12)) {
        e.skipped = true;
        e.note = "scale above D(V)";
        rep.entries.push_back(e);
        continue;
      }
      for (std::size_t k = 0; k < V.members.size(); k += stride) {
        net.ball(V.members[k], r, ball);
        double far = 0.0;
        for (PointId b : ball) far = std::max(far, (*sd)(b));
        e.constant = std::max(e.constant, far > 0 ? r / far : INFINITY);
      }
      e.pass = e.constant <= L;
      rep.pass = rep.pass && e.pass;
      rep.worst = std::max(rep.worst, e.constant);
      rep.entries.push_back(e);
    }
  }
  return rep;
}

AvoidabilityReport avoidability_audit(const ObstacleSet& V, const Net& net, double r, double L, std::uint64_t seed,
                                      std::size_t random_arcs) {
  AvoidabilityReport rep;
  if (r >= V.scale / (2 * L)) {
    rep.skipped = true;
    rep.note = "scale gate: r >= D(V)/(2L)";
    return rep;
  }
  auto sd = net.set_distance(V.members);
  std::vector<PointId> ring, hood, around;
  double reach = 0.0;
  for (PointId m : V.members) reach = std::max(reach, net.dist(V.members.front(), m));
  net.ball(V.members.front(), reach + 2 * r, around);
  std::sort(around.begin(), around.end());
  for (PointId p : around) {
    double d = (*sd)(p);
    if (d <= 2 * r) hood.push_back(p);
    if (d >= r && d <= 2 * r) ring.push_back(p);
  }
  if (ring.size() < 2) {
    rep.note = "no test arcs at this scale";
    return rep;
  }
  PathSearch search(net);
  auto in_hood = [&](PointId z) { return (*sd)(z) <= 2 * r; };
  std::vector<Arc> tests;
  const std::size_t chords = std::min<std::size_t>(8, ring.size());
  for (std::size_t q = 0; q < chords; ++q) {
    PointId x = ring[q * ring.size() / chords], y = x;
    double far = -1.0;
    for (PointId p : ring)
      if (double d = net.dist(x, p); d > far) far = d, y = p;
    Arc I = search.find(x, y, in_hood);
    if (!I.empty()) tests.push_back(std::move(I));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_arcs; ++k) {
    PointId x = ring[rng() % ring.size()], y = ring[rng() % ring.size()], m = hood[rng() % hood.size()];
    if (x == y) continue;
    Arc a = search.find(x, m, in_hood), b = search.find(m, y, in_hood);
    if (a.empty() || b.empty()) continue;
    a.insert(a.end(), b.begin() + 1, b.end());
    tests.push_back(cut_loops(a));
  }
  if (tests.empty()) {
    rep.note = "no test arcs at this scale";
    return rep;
  }
  const double lo = r / L, hi = 2 * r * L, iota = 4 * r * L;
  for (const Arc& I : tests) {
    ++rep.arcs;
    auto dI = net.set_distance(I);
    Arc J = search.find(I.front(), I.back(), [&](PointId z) {
      double d = (*sd)(z);
      return d >= lo && d <= hi && (*dI)(z) <= iota;
    });
    bool ok = !J.empty() && follows_check(net, J, I, iota).follows;
    if (ok) {
      ++rep.passed;
      rep.worst_follow = std::max(rep.worst_follow, follow_distance(net, J, I));
    } else if (rep.witness.empty()) {
      rep.witness = I;
    }
  }
  rep.pass = rep.passed == rep.arcs;
  return rep;
}

RescaleReport rescale_audit(const BoundaryNet& net, PointId z, double r, double D) {
  RescaleReport rep;
  const double eps = net.params.epsilon;
  rep.target_depth = -std::log(2 * r * net.params.C0) / eps - net.delta - 1;
  const CuspedBall& host = *net.host;
  auto path = net.witness_path(z);
  std::vector<PointId> near;
  net.ball(z, r, near);

  const auto depth = static_cast<long>(std::lround(rep.target_depth));
  if (depth < 1 || depth >= static_cast<long>(path.size()) - 1) {
    rep.fallback = true;
    rep.note = "no point at the target depth on [w, z); identity map";
    rep.L0 = 1.0;
    rep.pairs = near.size() * (near.size() - 1) / 2;
    return rep;
  }
  Vertex y = path[static_cast<std::size_t>(depth)];
  if (!host.is_cayley(y)) {
    CuspedPoint p = host.point(y);
    rep.gap = p.level;
    if (rep.gap > D) {
      rep.orbit_gap = true;
      rep.note = "no orbit point within D of y (depth " + std::to_string(rep.gap) + " in a horoball)";
      return rep;
    }
    y = p.cayley;
  }
  const Presentation& P = *host.presentation;
  rep.g = host.cayley.word(y);
  const GroupWord ginv = inverse(rep.g);

  std::vector<Vertex> image;
  std::vector<PointId> kept;
  for (PointId a : near) {
    Vertex v = net.witness[a];
    if (!host.is_cayley(v)) {
      ++rep.skipped;
      continue;
    }
    Vertex u = host.cayley.find(P.element(concat(ginv, host.cayley.word(v))));
    if (u == kUnreached) {
      ++rep.skipped;
      continue;
    }
    image.push_back(u);
    kept.push_back(a);
  }
  auto table = distance_table(host.graph, image, image);
  const auto& d0 = host.distances_from(host.basepoint);
  rep.L0 = 1.0;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      double before = net.dist(kept[i], kept[j]) / r;
      if (before <= 0) continue;
      double s = gromov_product(d0[static_cast<std::size_t>(image[i])], d0[static_cast<std::size_t>(image[j])],
                                table.at(i, j));
      double q = std::exp(-eps * s) / before;
      rep.L0 = std::max(rep.L0, std::max(q, 1.0 / q));
      ++rep.pairs;
    }
  return rep;
}

}  // namespace hyparc
