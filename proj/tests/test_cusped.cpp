#include <doctest.h>

#include <cmath>
#include <numeric>
#include <queue>

#include "hyparc/cusped.hpp"
#include "hyparc/cyclotomic.hpp"
#include "hyparc/presentation.hpp"

using namespace hyparc;

namespace {

// Dijkstra on a grid in the upper half-plane with edge length |dz| / y
// (midpoint rule), stencil of all steps up to 3 cells.
double half_plane_grid_distance(double x0, double y0, double x1, double y1) {
  const double hstep = 0.01;
  const double xmin = std::min(x0, x1) - 1.0, xmax = std::max(x0, x1) + 1.0, ymin = 0.5, ymax = 3.0;
  const int nx = static_cast<int>((xmax - xmin) / hstep) + 1, ny = static_cast<int>((ymax - ymin) / hstep) + 1;
  auto id = [&](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i); };
  std::vector<double> d(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), INFINITY);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto cell = [&](double x, double y) {
    return std::pair{static_cast<int>(std::lround((x - xmin) / hstep)), static_cast<int>(std::lround((y - ymin) / hstep))};
  };
  auto [si, sj] = cell(x0, y0);
  auto [ti, tj] = cell(x1, y1);
  d[id(si, sj)] = 0;
  pq.push({0, id(si, sj)});
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv > d[v]) continue;
    const int i = static_cast<int>(v % static_cast<std::size_t>(nx)), j = static_cast<int>(v / static_cast<std::size_t>(nx));
    if (i == ti && j == tj) return dv;
    for (int di = -3; di <= 3; ++di)
      for (int dj = -3; dj <= 3; ++dj) {
        if ((!di && !dj) || std::gcd(std::abs(di), std::abs(dj)) != 1) continue;
        int a = i + di, b = j + dj;
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        double ymid = ymin + (j + b) * hstep / 2;
        double w = std::hypot(di, dj) * hstep / ymid;
        if (dv + w < d[id(a, b)]) {
          d[id(a, b)] = dv + w;
          pq.push({dv + w, id(a, b)});
        }
      }
  }
  return INFINITY;
}

// Horoball graph built directly from the adjacency rule on a line fragment.
std::vector<int> line_horoball_bfs(int m, int K, int si, int sk) {
  auto id = [&](int i, int k) { return k * m + i; };
  std::vector<int> d(static_cast<std::size_t>(m * (K + 1)), -1);
  std::vector<int> q{id(si, sk)};
  d[static_cast<std::size_t>(q[0])] = 0;
  for (std::size_t h = 0; h < q.size(); ++h) {
    int v = q[h], i = v % m, k = v / m;
    std::vector<int> nb;
    if (k > 0) nb.push_back(id(i, k - 1));
    if (k < K) nb.push_back(id(i, k + 1));
    for (int j = 0; j < m; ++j)
      if (j != i && std::abs(i - j) <= (1 << k)) nb.push_back(id(j, k));
    for (int u : nb)
      if (d[static_cast<std::size_t>(u)] < 0) {
        d[static_cast<std::size_t>(u)] = d[static_cast<std::size_t>(v)] + 1;
        q.push_back(u);
      }
  }
  return d;
}

std::vector<std::uint16_t> line_metric(int m) {
  std::vector<std::uint16_t> out(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(i * m + j)] = static_cast<std::uint16_t>(std::abs(i - j));
  return out;
}

}  // namespace

TEST_SUITE("cusped") {
  TEST_CASE("strip distance") {
    CHECK(strip_distance(1, 1, 1) == doctest::Approx(std::acosh(1.5)));
    CHECK(strip_distance(1, 1, 1) == doctest::Approx(0.96242).epsilon(1e-5));
    CHECK(strip_distance(0, 1, 5) == doctest::Approx(std::log(5.0)));
    CHECK(strip_distance(2, 1, 1) == doctest::Approx(1.76275).epsilon(1e-5));
    CHECK(strip_distance(2, 1, 1) == doctest::Approx(half_plane_grid_distance(0, 1, 2, 1)).epsilon(0.02));
    CHECK(strip_distance(1, 1, 2) == doctest::Approx(half_plane_grid_distance(0, 1, 1, 2)).epsilon(0.02));
  }

  TEST_CASE("horoball adjacency rule") {
    std::vector<Vertex> base(9);
    for (int i = 0; i < 9; ++i) base[static_cast<std::size_t>(i)] = i;
    auto h = build_horoball(base, line_metric(9), 3);
    CHECK(h.depth == 3);
    CHECK(h.horizontal(0, 4, 2));
    CHECK_FALSE(h.horizontal(0, 2, 0));
    auto d = h.distances_from(0, 0);
    CHECK(d[8] == 6);
    auto oracle = line_horoball_bfs(9, 3, 0, 0);
    for (std::size_t v = 0; v < oracle.size(); ++v) CHECK(d[v] == oracle[v]);
  }

  TEST_CASE("depth clamping") {
    CHECK(clamp_depth(10, 8) == 4);
    CHECK(clamp_depth(2, 100) == 2);
    CHECK(clamp_depth(5, 0) == 0);
    CHECK(default_horoball_depth(6) == 6);
  }

  TEST_CASE("line horoball against 2 log2 t") {
    const int m = 257;
    std::vector<Vertex> base(m);
    for (int i = 0; i < m; ++i) base[static_cast<std::size_t>(i)] = i;
    auto h = build_horoball(base, line_metric(m), 9);
    auto d = h.distances_from(0, 0);
    for (int t = 1; t < m; ++t) CHECK(std::abs(d[static_cast<std::size_t>(t)] - 2 * std::log2(t)) <= 4);
  }

  TEST_CASE("no parabolics: cusped metric is the word metric") {
    auto f2 = parse_presentation("gens a b; rels;");
    auto c = cusped_ball(f2, 3);
    CHECK(c.horoballs.empty());
    CHECK(c.size() == c.cayley.size());
    for (Vertex v : {0, 5, 17}) {
      auto a = c.distances_from(v);
      auto b = bfs(c.cayley.graph, v);
      CHECK(a == b);
    }
  }

  TEST_CASE("cusped distance never exceeds word distance") {
    auto z2 = parse_presentation("gens a b; rels [a,b]; parabolic a b");
    auto c = cusped_ball(z2, 4);
    REQUIRE(c.horoballs.size() == 1);
    for (Vertex v = 0; v < c.cayley.size(); v += 3) {
      const auto& dc = c.distances_from(v);
      auto dg = bfs(c.cayley.graph, v);
      for (Vertex u = 0; u < c.cayley.size(); ++u) CHECK(dc[static_cast<std::size_t>(u)] <= dg[static_cast<std::size_t>(u)]);
    }
  }

  TEST_CASE("points round-trip") {
    auto z2 = parse_presentation("gens a b; rels [a,b]; parabolic a b");
    auto c = cusped_ball(z2, 3);
    for (Vertex v = 0; v < c.size(); ++v) CHECK(c.vertex(c.point(v)) == v);
  }

  TEST_CASE("busemann along the ray") {
    auto z2 = parse_presentation("gens a b; rels [a,b]; parabolic a b");
    auto c = cusped_ball(z2, 4);
    const auto& h = c.horoballs[0];
    const int T = h.depth;
    for (int k = 0; k <= T; ++k) {
      Vertex x = c.vertex({h.base[h.nearest], 0, k});
      CHECK(busemann(c, 0, x, T) == -k);
    }
    CHECK(busemann(c, 0, c.basepoint, T) >= 0);
  }

  TEST_CASE("exact rings") {
    auto s = Zeta16::power(8);
    CHECK(s == -Zeta16::one());
    auto r2 = Zeta16::one_plus_sqrt2();
    CHECK(r2.value().real() == doctest::Approx(1 + std::sqrt(2.0)));
    CHECK((Zeta16::power(3) * Zeta16::power(5)) == Zeta16::power(8));
    ZOmega w{0, 1};
    CHECK(w * w == ZOmega{-1, -1});
    CHECK(w * w * w == ZOmega{1, 0});
  }

  TEST_CASE("figure-eight relator is trivial") {
    auto f8 = parse_presentation("gens x y; backend exact-matrix; rels y.x^-1.y.x.y^-1.x^-1.y.x^-1.y^-1.x;");
    CHECK(f8.engine->is_identity(f8.relators[0]));
    CHECK_FALSE(f8.engine->is_identity(f8.parse_word("x.y")));
  }
}
