#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "hyparc/audits.hpp"
#include "hyparc/embed.hpp"
#include "hyparc/presets.hpp"

using namespace hyparc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, static_cast<double>(args)...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome check_strip_law() {
  double worst = 0.0;
  for (int t = 1; t <= 10000; ++t)
    worst = std::max(worst, std::abs(strip_distance(t, 1, 1) - 2 * std::log(static_cast<double>(t))));
  return {worst <= 1.0, fmt("max |d - 2 ln t| = %.4f over t <= 1e4", worst)};
}

Outcome check_line_horoball() {
  auto p = parse_presentation("gens a; rels; parabolic a");
  auto ball = cayley_ball(p, 4096);
  auto fr = coset_fragments(ball, {0});
  auto h = build_horoball(ball, fr[0], {0}, 13);
  auto d = h.distances_from(0, 0);
  double worst = 0.0;
  int at = 0;
  for (Vertex v = 0; v < ball.size(); ++v) {
    const int t = ball.depth[static_cast<std::size_t>(v)];
    if (t == 0) continue;
    const double e = std::abs(d[static_cast<std::size_t>(v)] - 2 * std::log2(static_cast<double>(t)));
    if (e > worst) worst = e, at = t;
  }
  return {worst <= 4.0, fmt("sup |d - 2 log2 t| = %.0f (at t = %.0f), depth %.0f", worst, at, h.depth)};
}

Outcome check_tree_exactness() {
  auto p = parse_presentation("gens a b; rels;");
  auto ball = cusped_ball(p, 4);
  std::vector<Vertex> all;
  for (Vertex v = 0; v < ball.size(); ++v) all.push_back(v);
  auto est = delta_fourpoint(restrict_metric(ball.graph, all));
  std::mt19937_64 rng(1);
  std::size_t wrong = 0;
  for (int k = 0; k < 1000; ++k) {
    Vertex x = static_cast<Vertex>(rng() % all.size()), y = static_cast<Vertex>(rng() % all.size());
    auto wx = ball.cayley.word(x).letters, wy = ball.cayley.word(y).letters;
    std::size_t common = 0;
    while (common < wx.size() && common < wy.size() && wx[common] == wy[common]) ++common;
    if (gromov_product(ball, 0, x, y) != static_cast<double>(common)) ++wrong;
  }
  return {est.delta == 0.0 && wrong == 0,
          fmt("delta = %.1f over %.0f points; %.0f of 1000 Gromov products differ from the common prefix", est.delta,
              static_cast<double>(all.size()), static_cast<double>(wrong))};
}

Outcome check_busemann() {
  auto p = parse_presentation("gens a b; rels [a,b]; parabolic a b");
  auto ball = cusped_ball(p, 6);
  std::int32_t worst = 0;
  std::size_t scanned = 0;
  for (std::size_t o = 0; o < ball.horoballs.size(); ++o)
    for (int T = 1; T <= ball.horoballs[o].depth; ++T) {
      auto r = busemann_sandwich(ball, static_cast<int>(o), T);
      worst = std::max(worst, r.c_hat);
      scanned += r.scanned;
    }
  return {worst <= 3, fmt("C_hat = %.0f over %.0f horoballs (%.0f vertex checks)", worst,
                          static_cast<double>(ball.horoballs.size()), static_cast<double>(scanned))};
}

Outcome check_separation() {
  auto p = parse_presentation("gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d");
  auto ball = std::make_shared<CuspedBall>(cusped_ball(p, 7));
  double v[2] = {0, 0};
  int i = 0;
  for (int T : {4, 6}) {
    NetOptions o;
    o.T = T;
    o.delta = 2;
    o.margin = 1;
    o.max_parabolic_distance = 3;
    o.max_points = 0;
    auto net = build_net(ball, o);
    auto fam = limit_sets(net);
    std::vector<ObstacleSet> parabolic;
    for (auto& s : fam.sets)
      if (s.kind == ObstacleKind::parabolic) parabolic.push_back(s);
    v[i++] = separation_audit(parabolic, net, net.params.epsilon).inv_C;
  }
  const double ratio = std::max(v[0], v[1]) / std::min(v[0], v[1]);
  return {v[0] > 0 && v[1] > 0 && ratio <= 2.0,
          fmt("1/C_hat = %.4f (T=4), %.4f (T=6), ratio %.3f", v[0], v[1], ratio)};
}

Outcome check_carpet() {
  Config c;
  c.preset = "carpet";
  World w = build_world(c);
  const Net& net = *w.net;
  auto res = build_quasi_arc(net, w.family, w.quasi_arc, w.J0);
  const auto& r = res.report;
  const double lambda = r.lambda_hat;
  auto v = verify_quasi_arc(net, res.arc, lambda);
  const double diam = arc_diameter(net, res.arc);
  const double floor = 0.5 * net.diameter() - net.resolution();
  std::size_t close = 0;
  for (std::size_t k = 0; k < w.family.size() && k < r.clearance.size(); ++k)
    if (r.clearance[k] * lambda < w.family[k].scale * (1 - 1e-12)) ++close;
  const bool ok = r.pass && v.pass && diam >= floor && close == 0 && r.drift_total <= net.diameter() / 4;
  return {ok, fmt("lambda_hat %.2f verify %.0f, diam %.3f >= %.3f, clearance violations %.0f, drift %.3f", lambda,
                  v.pass, diam, floor, static_cast<double>(close), r.drift_total) +
                  fmt(" <= %.3f, %.0f obstacles", net.diameter() / 4, static_cast<double>(w.family.size()))};
}

Arc zigzag(const LatticeNet& net, std::mt19937_64& rng) {
  const long N = net.side();
  long i = 0, j = static_cast<long>(rng() % static_cast<unsigned long>(N + 1));
  Arc a{net.id(i, j)};
  while (i < N) {
    long di = std::clamp(static_cast<long>(rng() % 3) - 1 + (rng() % 2 == 0 ? 1 : 0), -1L, 1L);
    long dj = static_cast<long>(rng() % 3) - 1;
    long ni = std::clamp(i + di, 0L, N), nj = std::clamp(j + dj, 0L, N);
    if (ni == i && nj == j) continue;
    i = ni, j = nj;
    a.push_back(net.id(i, j));
  }
  return cut_loops(a);
}

Outcome check_straightening() {
  auto net = grid_net(64);
  std::mt19937_64 rng(2024);
  const double iota = 0.08;
  int good = 0;
  double S_hat = 0.0;
  for (int t = 0; t < 100; ++t) {
    Arc a = zigzag(net, rng);
    StraightenReport rep;
    Arc b = straighten(net, a, iota, &rep);
    auto ls = local_structure(net, b, iota, rep.s, rep.S);
    S_hat = std::max(S_hat, ls.measured_S);
    if (ls.holds && follows_check(net, b, a, iota).follows && is_simple(b)) ++good;
  }
  return {good == 100, fmt("%.0f/100 arcs hold (s, S) = (0.5, 4) at iota %.2f and follow their input; measured S %.3f",
                           good, iota, S_hat)};
}

Outcome check_chains() {
  auto net = grid_net(64);
  std::mt19937_64 rng(99);
  const auto pts = net.points();
  std::size_t bad = 0, limited = 0;
  double K1 = 0.0;
  for (int k = 0; k < 1000; ++k) {
    PointId a = pts[rng() % pts.size()], b = pts[rng() % pts.size()];
    if (a == b) continue;
    auto ch = chain(net, a, b);
    const double rho = net.dist(a, b);
    double gap = 0.0, diam = 0.0;
    for (std::size_t i = 1; i < ch.points.size(); ++i) gap = std::max(gap, net.dist(ch.points[i - 1], ch.points[i]));
    for (PointId x : ch.points)
      for (PointId y : ch.points) diam = std::max(diam, net.dist(x, y));
    const bool ends = ch.points.front() == a && ch.points.back() == b;
    if (ch.resolution_limited) {
      ++limited;
      if (!ends || rho / 2 >= net.spacing()) ++bad;
      continue;
    }
    if (!ends || gap > rho / 2 * (1 + 1e-12)) ++bad;
    K1 = std::max(K1, diam / rho);
  }
  return {bad == 0, fmt("%.0f bad chains, global K1_hat %.3f, %.0f resolution-limited pairs", static_cast<double>(bad),
                        K1, static_cast<double>(limited))};
}

struct Genus2Run {
  double lambda = 0, c = 0, persistence = 0;
  std::vector<double> eta;
  bool connected = false, arc_pass = false;
};

Genus2Run genus2_run(const Presentation& g, int T) {
  Genus2Run out;
  NetOptions o;
  o.T = T;
  auto net = build_ray_net(g, 64, 2, o);
  out.connected = !linconn_estimate(net).disconnected;
  QuasiArcParams p;
  p.r = 0.5;
  p.L = 1;
  p.D0 = 1;
  auto res = build_quasi_arc(net, {}, p, angular_arc(net));
  out.arc_pass = res.report.pass;
  auto emb = embed_quadrant(net, res.arc, T, 1.0);
  out.lambda = emb.distortion.lambda;
  out.c = emb.distortion.c;
  auto prof = transversality_audit(emb.shadow, net.host->cayley, g.hyperbolic, {0, 1, 2, 4});
  out.eta = prof.eta;
  auto co = coned_off(net.host->cayley, g.hyperbolic);
  MetricMatrix src{emb.shadow.size(), std::vector<double>(emb.shadow.size() * emb.shadow.size())};
  for (std::size_t i = 0; i < src.n; ++i)
    for (std::size_t j = 0; j < src.n; ++j)
      src.d[i * src.n + j] = emb.quadrant.distance(emb.quadrant.points[i], emb.quadrant.points[j]);
  out.persistence = persistence_check(emb.shadow, src, co).distortion.lambda;
  return out;
}

Outcome check_genus2() {
  auto g = parse_presentation("gens a b c d; rels [a,b][c,d]; hypsub a");
  auto t0 = std::chrono::steady_clock::now();
  auto a = genus2_run(g, 8);
  auto b = genus2_run(g, 10);
  const double secs = seconds_since(t0);
  auto within = [](double x, double y) { return std::abs(x - y) <= 0.1 * std::max(std::abs(x), std::abs(y)); };
  bool finite = std::isfinite(a.persistence) && std::isfinite(b.persistence);
  for (double e : a.eta) finite = finite && std::isfinite(e);
  for (double e : b.eta) finite = finite && std::isfinite(e);
  const bool ok = a.connected && b.connected && a.arc_pass && b.arc_pass && within(a.lambda, b.lambda) &&
                  within(a.c, b.c) && finite && secs < 600;
  std::string eta;
  for (double e : b.eta) eta += (eta.empty() ? "" : ",") + fmt("%.0f", e);
  return {ok, fmt("connected %.0f/%.0f, lambda %.4f -> %.4f, c %.3f", a.connected, b.connected, a.lambda, b.lambda,
                  a.c) +
                  fmt(" -> %.3f, eta(0,1,2,4) = ", b.c) + eta +
                  fmt(", persistence lambda' %.3f -> %.3f", a.persistence, b.persistence)};
}

Outcome check_coned_collapse() {
  auto p = parse_presentation("gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d");
  GroupWord cross = p.parse_word("(a.b.c.d)^10"), inside = p.parse_word("(a.b)^20");
  auto tube = cayley_tube(p, {cross, inside}, 1);
  auto coned = coned_off(tube, p.parabolic);
  auto prefixes = [&](const GroupWord& w) {
    std::vector<Vertex> out;
    GroupWord pre;
    for (Letter l : w.letters) {
      pre.letters.push_back(l);
      out.push_back(tube.find(p.element(pre)));
    }
    return out;
  };
  auto run = [&](const std::vector<Vertex>& pts) {
    auto t = distance_table(tube.graph, pts, pts);
    MetricMatrix src{pts.size(), std::vector<double>(t.data.begin(), t.data.end())};
    return persistence_check(pts, src, coned);
  };
  auto seg = run(prefixes(inside));
  auto path = run(prefixes(cross));
  return {seg.image_diameter <= 1.0 && seg.collapse && path.distortion.lambda <= 4.0,
          fmt("segment image diam %.0f (source %.0f, collapse %.0f); cross-factor lambda' %.3f", seg.image_diameter,
              seg.source_diameter, seg.collapse, path.distortion.lambda)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double seconds;  // runtime limit
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<Criterion> criteria{
      {"horoball distance law", check_strip_law, 1},
      {"combinatorial horoball over a line", check_line_horoball, 30},
      {"tree exactness", check_tree_exactness, 60},
      {"horoball sandwich", check_busemann, 60},
      {"parabolic separation", check_separation, 120},
      {"carpet quasi-arc", check_carpet, 60},
      {"straightening", check_straightening, 60},
      {"chains", check_chains, 60},
      {"genus-2 end to end", check_genus2, 600},
      {"coned-off collapse and persistence", check_coned_collapse, 10},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!only.empty() && !only.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    if (secs > criteria[k].seconds) {
      o.pass = false;
      o.detail += fmt("; over the %.0fs limit", criteria[k].seconds);
    }
    std::printf("criterion %2d %s: %s; %s [%.2fs]\n", id, o.pass ? "PASS" : "FAIL", criteria[k].name,
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
