#include "hyparc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "hyparc/error.hpp"
#include "hyparc/surface.hpp"

namespace hyparc {
namespace {

// Breadth-first search limited to a radius, reusing scratch between calls.
class LocalSearch {
 public:
  explicit LocalSearch(const Graph& g) : g_(g), stamp_(static_cast<std::size_t>(g.size()), 0), dist_(stamp_.size()) {}

  template <class Visit>
  void run(const std::vector<Vertex>& sources, std::int32_t radius, Visit&& visit) {
    ++gen_;
    queue_.clear();
    for (Vertex s : sources) {
      if (stamp_[static_cast<std::size_t>(s)] == gen_) continue;
      stamp_[static_cast<std::size_t>(s)] = gen_;
      dist_[static_cast<std::size_t>(s)] = 0;
      queue_.push_back(s);
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      Vertex v = queue_[head];
      std::int32_t d = dist_[static_cast<std::size_t>(v)];
      visit(v, d);
      if (d == radius) continue;
      for (Vertex u : g_.neighbors(v)) {
        if (stamp_[static_cast<std::size_t>(u)] == gen_) continue;
        stamp_[static_cast<std::size_t>(u)] = gen_;
        dist_[static_cast<std::size_t>(u)] = d + 1;
        queue_.push_back(u);
      }
    }
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::int32_t> dist_;
  std::vector<Vertex> queue_;
  std::uint32_t gen_ = 0;
};

bool on_central_ray(const CuspedBall& ball, Vertex v) {
  if (ball.is_cayley(v)) return false;
  CuspedPoint p = ball.point(v);
  const Horoball& h = ball.horoballs[static_cast<std::size_t>(p.horoball)];
  return p.cayley == h.base[h.nearest];
}

}  // namespace

std::vector<Vertex> BoundaryNet::witness_path(PointId a) const {
  return geodesic(*host, host->basepoint, witness[a]);
}

BoundaryNet make_boundary_net(std::shared_ptr<const CuspedBall> host, std::vector<Vertex> candidates,
                              std::vector<Vertex> priority, const NetOptions& opt) {
  if (!host) throw usage_error("boundary net needs a host ball");
  BoundaryNet net;
  net.host = host;
  net.T = opt.T;
  net.delta = opt.delta >= 0 ? opt.delta : delta_fourpoint(host->graph, opt.seed).delta;
  net.margin = opt.margin >= 0 ? opt.margin : 2.0 * net.delta + 1.0;
  net.params = opt.params;
  if (net.params.epsilon <= 0) net.params.epsilon = std::min(1.0, 1.0 / (4.0 * net.delta + 1.0));

  std::vector<Vertex> order;
  std::unordered_set<Vertex> seen;
  for (auto* list : {&priority, &candidates}) {
    std::vector<Vertex> sorted = *list;
    if (list == &candidates) std::sort(sorted.begin(), sorted.end());
    for (Vertex v : sorted)
      if (seen.insert(v).second) order.push_back(v);
  }
  net.candidates = order.size();
  if (order.empty()) throw usage_error("no boundary witnesses at depth " + std::to_string(opt.T) + " (ball too small)");

  // Greedy identification: a candidate joins the earliest class whose
  // representative lies at distance < 2 * margin, i.e. whose Gromov product
  // with it exceeds T - margin.
  const auto reach = static_cast<std::int32_t>(std::ceil(2.0 * net.margin)) - 1;
  std::vector<std::int32_t> rep_of(static_cast<std::size_t>(host->size()), -1);
  std::vector<Vertex> reps;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<int>> marks;
  LocalSearch search(host->graph);
  for (Vertex c : order) {
    std::int32_t cls = -1;
    if (reach >= 0)
      search.run({c}, reach, [&](Vertex v, std::int32_t) {
        std::int32_t r = rep_of[static_cast<std::size_t>(v)];
        if (r >= 0 && (cls < 0 || r < cls)) cls = r;
      });
    if (cls < 0) {
      cls = static_cast<std::int32_t>(reps.size());
      rep_of[static_cast<std::size_t>(c)] = cls;
      reps.push_back(c);
      sizes.push_back(0);
      marks.emplace_back();
    }
    ++sizes[static_cast<std::size_t>(cls)];
    if (on_central_ray(*host, c) &&
        host->horoballs[static_cast<std::size_t>(host->point(c).horoball)].d_O <= opt.max_parabolic_distance)
      marks[static_cast<std::size_t>(cls)].push_back(host->point(c).horoball);
  }

  std::vector<std::size_t> keep(reps.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  if (reps.size() > opt.max_points) {
    std::vector<std::size_t> marked, rest;
    for (std::size_t i = 0; i < reps.size(); ++i) (marks[i].empty() ? rest : marked).push_back(i);
    std::mt19937_64 rng(opt.seed);
    std::shuffle(rest.begin(), rest.end(), rng);
    if (marked.size() < opt.max_points) rest.resize(opt.max_points - marked.size());
    else rest.clear();
    keep = marked;
    keep.insert(keep.end(), rest.begin(), rest.end());
    std::sort(keep.begin(), keep.end());
    net.sampled = true;
    net.warnings.push_back("kept a seeded sample of " + std::to_string(keep.size()) + " of " +
                           std::to_string(reps.size()) + " witness classes");
  }
  for (std::size_t i : keep) {
    net.witness.push_back(reps[i]);
    net.class_size.push_back(sizes[i]);
    std::sort(marks[i].begin(), marks[i].end());
    net.marks.push_back(marks[i]);
  }

  const std::size_t n = net.witness.size();
  auto table = distance_table(host->graph, net.witness, net.witness);
  const auto& d0 = host->distances_from(host->basepoint);
  net.product.assign(n * n, 0.0);
  std::vector<double> rho(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::int32_t dij = table.at(i, j);
      if (dij == kUnreached) throw contract_error("boundary witnesses in different components of the host");
      double s = gromov_product(d0[static_cast<std::size_t>(net.witness[i])],
                                d0[static_cast<std::size_t>(net.witness[j])], dij);
      net.product[i * n + j] = s;
      if (i != j) rho[i * n + j] = std::exp(-net.params.epsilon * s);
    }
  static_cast<DenseNet&>(net) = DenseNet(n, std::move(rho), opt.resolution_factor);
  return net;
}

BoundaryNet build_net(std::shared_ptr<const CuspedBall> ball, const NetOptions& opt) {
  if (!ball) throw usage_error("boundary net needs a host ball");
  NetOptions o = opt;
  if (o.delta < 0) o.delta = delta_fourpoint(ball->graph, o.seed).delta;
  const double margin = o.margin >= 0 ? o.margin : 2.0 * o.delta + 1.0;
  const auto need = static_cast<std::int32_t>(std::ceil(margin));
  if (ball->horoballs.empty() && o.T + need > ball->cayley.radius)
    throw usage_error("net depth " + std::to_string(o.T) + " plus margin exceeds the ball radius");

  const auto& d0 = ball->distances_from(ball->basepoint);
  const auto n = static_cast<std::size_t>(ball->size());
  auto frontier = [&](Vertex v) {
    if (ball->is_cayley(v))
      return ball->cayley.full_ball && ball->cayley.depth[static_cast<std::size_t>(v)] == ball->cayley.radius;
    CuspedPoint p = ball->point(v);
    return p.level == ball->horoballs[static_cast<std::size_t>(p.horoball)].depth;
  };

  // ext[v]: how far a geodesic from w through v continues, capped at need.
  std::vector<std::vector<Vertex>> layer(static_cast<std::size_t>(o.T + need) + 1);
  for (std::size_t v = 0; v < n; ++v)
    if (d0[v] >= o.T && d0[v] <= o.T + need) layer[static_cast<std::size_t>(d0[v])].push_back(static_cast<Vertex>(v));
  std::vector<std::int32_t> ext(n, 0);
  for (auto k = static_cast<std::int32_t>(layer.size()) - 1; k >= o.T; --k)
    for (Vertex v : layer[static_cast<std::size_t>(k)]) {
      std::int32_t e = 0;
      if (frontier(v)) e = need;
      else
        for (Vertex u : ball->graph.neighbors(v))
          if (d0[static_cast<std::size_t>(u)] == k + 1) e = std::max(e, ext[static_cast<std::size_t>(u)] + 1);
      ext[static_cast<std::size_t>(v)] = std::min(e, need);
    }

  std::vector<Vertex> candidates, priority;
  for (Vertex v : layer[static_cast<std::size_t>(o.T)])
    if (ext[static_cast<std::size_t>(v)] >= need) candidates.push_back(v);
  for (std::size_t h = 0; h < ball->horoballs.size(); ++h) {
    const Horoball& O = ball->horoballs[h];
    int level = o.T - O.d_O;
    if (O.d_O > o.max_parabolic_distance) continue;
    if (level < 1 || level > O.depth) continue;
    Vertex v = ball->vertex({O.base[O.nearest], static_cast<int>(h), level});
    if (ext[static_cast<std::size_t>(v)] >= need && d0[static_cast<std::size_t>(v)] == o.T) priority.push_back(v);
  }
  return make_boundary_net(std::move(ball), std::move(candidates), std::move(priority), o);
}

BoundaryNet build_ray_net(const Presentation& p, int rays, int width, NetOptions opt) {
  const SurfaceGroup* sg = surface_group(p);
  if (!sg) throw usage_error("ray nets need a presentation with a surface backend");
  if (opt.delta < 0) opt.delta = delta_fourpoint(cayley_ball(p, 4).graph, opt.seed).delta;
  if (opt.margin < 0) opt.margin = 2.0 * opt.delta + 1.0;
  const int length = opt.T + static_cast<int>(std::ceil(opt.margin));
  std::vector<std::string> warnings;

  std::vector<GroupWord> words;
  std::size_t axes = 0;
  for (const auto& subset : p.hyperbolic)
    for (int g : subset)
      for (Letter l : {static_cast<Letter>(g + 1), static_cast<Letter>(-(g + 1))}) {
        GroupWord w;
        w.letters.assign(static_cast<std::size_t>(length), l);
        if (p.engine->normal_form(w).size() != w.size()) {
          warnings.push_back("axis word of " + p.format(GroupWord{{l}}) + " is not geodesic; skipped");
          continue;
        }
        words.push_back(std::move(w));
        ++axes;
      }
  std::size_t short_rays = 0;
  for (const auto& r : sg->sample_rays(rays, length + 4)) {
    GroupWord g = p.engine->normal_form(r);
    if (static_cast<int>(g.size()) < length) {
      ++short_rays;
      continue;
    }
    g.letters.resize(static_cast<std::size_t>(length));
    words.push_back(std::move(g));
  }
  if (short_rays) warnings.push_back(std::to_string(short_rays) + " sampled rays fell short of the required length");

  auto tube = cayley_tube(p, words, width);
  auto host = std::make_shared<CuspedBall>(cusp_over(std::move(tube), p.parabolic, default_horoball_depth(length)));
  std::vector<Vertex> candidates, priority;
  for (std::size_t i = 0; i < words.size(); ++i) {
    GroupWord prefix;
    prefix.letters.assign(words[i].letters.begin(), words[i].letters.begin() + opt.T);
    Vertex v = host->cayley.find(p.element(prefix));
    if (v == kUnreached) throw contract_error("ray prefix missing from its own tube");
    (i < axes ? priority : candidates).push_back(v);
  }
  BoundaryNet net = make_boundary_net(host, candidates, priority, opt);
  net.warnings.insert(net.warnings.begin(), warnings.begin(), warnings.end());
  return net;
}

ObstacleFamily limit_sets(const BoundaryNet& net, double track_radius) {
  ObstacleFamily fam;
  const CuspedBall& ball = *net.host;
  const double eps = net.params.epsilon;
  std::vector<std::pair<int, PointId>> parabolic;
  for (PointId a = 0; a < net.size(); ++a)
    for (int h : net.marks[a]) parabolic.emplace_back(h, a);
  std::sort(parabolic.begin(), parabolic.end());
  for (auto [h, a] : parabolic) {
    std::int32_t d = ball.horoballs[static_cast<std::size_t>(h)].d_O;
    fam.sets.push_back({{a}, std::exp(-eps * d), ObstacleKind::parabolic, h, d});
  }

  const Presentation* p = ball.presentation;
  if (!p || p->hyperbolic.empty()) return fam;
  const auto R = static_cast<std::int32_t>(track_radius >= 0 ? track_radius : std::max(1.0, 2.0 * net.delta));
  const auto& d0 = ball.distances_from(ball.basepoint);
  std::vector<std::vector<Vertex>> paths(net.size());
  for (PointId a = 0; a < net.size(); ++a) paths[a] = net.witness_path(a);

  LocalSearch search(ball.graph);
  std::vector<std::int32_t> near(static_cast<std::size_t>(ball.size()), -1);
  std::size_t omitted = 0;
  std::size_t fragment_id = 0;
  for (std::size_t s = 0; s < p->hyperbolic.size(); ++s) {
    auto frags = coset_fragments(ball.cayley, p->hyperbolic[s], static_cast<int>(s));
    for (const auto& f : frags) {
      const std::size_t id = fragment_id++;
      std::int32_t reach = 0;
      for (Vertex v : f.members) reach = std::max(reach, d0[static_cast<std::size_t>(v)]);
      if (f.distance + R >= net.T || reach < net.T - R) continue;
      std::vector<Vertex> touched;
      search.run(f.members, R, [&](Vertex v, std::int32_t d) {
        near[static_cast<std::size_t>(v)] = d;
        touched.push_back(v);
      });
      ObstacleSet set{{}, std::exp(-eps * f.distance), ObstacleKind::hyperbolic, static_cast<int>(id), f.distance};
      for (PointId a = 0; a < net.size(); ++a) {
        const auto& path = paths[a];
        bool tracks = path.size() > static_cast<std::size_t>(f.distance + R);
        for (std::size_t i = static_cast<std::size_t>(f.distance + R); tracks && i < path.size(); ++i)
          tracks = near[static_cast<std::size_t>(path[i])] >= 0;
        if (tracks) set.members.push_back(a);
      }
      for (Vertex v : touched) near[static_cast<std::size_t>(v)] = -1;
      if (set.members.empty()) ++omitted;
      else fam.sets.push_back(std::move(set));
    }
  }
  if (omitted)
    fam.warnings.push_back(std::to_string(omitted) + " hyperbolic coset fragments have no limit witnesses at depth " +
                           std::to_string(net.T));
  return fam;
}

}  // namespace hyparc
