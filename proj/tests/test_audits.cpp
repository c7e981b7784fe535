#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "hyparc/audits.hpp"
#include "hyparc/boundary.hpp"

using namespace hyparc;

namespace {

// Smallest number of r/2-balls centred at ball points covering B(c, r),
// by exhaustive search over center subsets of size at most kmax.
std::size_t minimum_cover(const Net& net, PointId c, double r, std::size_t kmax) {
  std::vector<PointId> ball;
  for (PointId p : net.points())
    if (net.dist(c, p) <= r) ball.push_back(p);
  const std::size_t m = ball.size();
  std::vector<std::uint64_t> mask(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (net.dist(ball[i], ball[j]) <= r / 2) mask[i] |= std::uint64_t{1} << j;
  const std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  std::function<bool(std::size_t, std::size_t, std::uint64_t)> reach = [&](std::size_t from, std::size_t k,
                                                                          std::uint64_t got) {
    if (got == full) return true;
    if (k == 0) return false;
    for (std::size_t i = from; i < m; ++i)
      if (reach(i + 1, k - 1, got | mask[i])) return true;
    return false;
  };
  for (std::size_t k = 1; k <= kmax; ++k)
    if (reach(0, k, 0)) return k;
  return kmax + 1;
}

ObstacleSet filled_square(const LatticeNet& net, long lo, long hi) {
  ObstacleSet V;
  for (long i = lo; i <= hi; ++i)
    for (long j = lo; j <= hi; ++j)
      V.members.push_back(net.id(i, j));
  V.scale = static_cast<double>(hi - lo) * net.spacing();
  return V;
}

const Presentation& free_group() {
  static Presentation p = parse_presentation("gens a b; rels;");
  return p;
}

}  // namespace

TEST_SUITE("audits") {
  TEST_CASE("doubling") {
    auto one = circle_net(1);
    CHECK(doubling_estimate(one).N == 1);

    auto circle = circle_net(64);
    auto d = doubling_estimate(circle);
    CHECK(d.exhaustive);
    CHECK(d.N <= 5);
    for (PointId c : {PointId{0}, PointId{17}})
      for (double r : {0.3, 1.0, 1.9}) {
        auto best = minimum_cover(circle, c, r, 5);
        CHECK(best <= 5);
        CHECK(best <= d.N);
      }

    auto ball = std::make_shared<CuspedBall>(cusped_ball(free_group(), 7));
    std::size_t N[2];
    for (int i = 0; i < 2; ++i) {
      NetOptions o;
      o.T = 3 + 2 * i;
      auto net = build_net(ball, o);
      N[i] = doubling_estimate(net).N;
    }
    CHECK(N[1] <= 2 * N[0]);
    CHECK(N[0] <= 2 * N[1]);
  }

  TEST_CASE("linear connectedness") {
    DenseNet two(2, {0, 1, 1, 0});
    two.set_resolution(0.5);
    CHECK(linconn_estimate(two).disconnected);

    auto grid = grid_net(16);
    auto l = linconn_estimate(grid);
    CHECK_FALSE(l.disconnected);
    CHECK(l.L <= 3);

    auto ball = std::make_shared<CuspedBall>(cusped_ball(free_group(), 6));
    NetOptions o;
    o.T = 4;
    CHECK(linconn_estimate(build_net(ball, o)).disconnected);
  }

  TEST_CASE("chains") {
    auto grid = grid_net(32);
    auto c0 = chain(grid, 5, 5);
    CHECK(c0.points == std::vector<PointId>{5});

    auto adj = chain(grid, grid.id(3, 3), grid.id(4, 3));
    CHECK(adj.points == std::vector<PointId>{grid.id(3, 3), grid.id(4, 3)});
    CHECK(adj.resolution_limited);

    const PointId a = grid.id(0, 0), b = grid.id(grid.side(), grid.side());
    auto c = chain(grid, a, b);
    CHECK_FALSE(c.resolution_limited);
    CHECK(c.points.front() == a);
    CHECK(c.points.back() == b);
    const double rho = grid.dist(a, b);
    double diam = 0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      if (i + 1 < c.points.size()) CHECK(grid.dist(c.points[i], c.points[i + 1]) <= rho / 2 + 1e-12);
      for (std::size_t j = 0; j < c.points.size(); ++j) diam = std::max(diam, grid.dist(c.points[i], c.points[j]));
    }
    CHECK(c.K1 == doctest::Approx(diam / rho));
  }

  TEST_CASE("porosity") {
    auto grid = grid_net(16);
    const double L = linconn_estimate(grid).L;
    ObstacleSet point;
    point.members = {grid.id(7, 7)};
    point.scale = 1.0;
    auto r = porosity_audit({point}, grid, {0.25, 0.5}, 2 * L);
    CHECK(r.pass);
    CHECK(r.worst <= 2 * L);

    ObstacleSet all;
    all.members = grid.points();
    all.scale = 1.0;
    auto bad = porosity_audit({all}, grid, {0.25, 0.5}, 10);
    CHECK_FALSE(bad.pass);
    for (const auto& e : bad.entries) CHECK(std::isinf(e.constant));

    auto skipped = porosity_audit({point}, grid, {2.0}, 2);
    CHECK(skipped.entries[0].skipped);
  }

  TEST_CASE("avoidability") {
    auto grid = grid_net(64);
    auto center = filled_square(grid, 28, 35);
    CHECK(center.scale == doctest::Approx(7.0 / 63));
    auto gate = avoidability_audit(center, grid, center.scale, 1.0);
    CHECK(gate.skipped);

    ObstacleSet big = filled_square(grid, 16, 47);
    auto ok = avoidability_audit(big, grid, big.scale / 8, 2.0, 3);
    CHECK_FALSE(ok.skipped);
    CHECK(ok.arcs > 0);
    CHECK(ok.pass);

    ObstacleSet midline;
    for (long j = 0; j <= grid.side(); ++j) midline.members.push_back(grid.id(32, j));
    midline.scale = 1.0;
    auto fail = avoidability_audit(midline, grid, 1.0 / 16, 2.0, 3);
    CHECK_FALSE(fail.skipped);
    CHECK_FALSE(fail.pass);
    REQUIRE_FALSE(fail.witness.empty());
    auto side = [&](PointId p) { return grid.x(p) < 32; };
    CHECK(side(fail.witness.front()) != side(fail.witness.back()));
  }

  TEST_CASE("rescaling") {
    auto ball = std::make_shared<CuspedBall>(cusped_ball(free_group(), 8));
    NetOptions o;
    o.T = 6;
    auto net = build_net(ball, o);
    auto shallow = rescale_audit(net, 0, 0.5, 4);
    CHECK(shallow.fallback);
    CHECK(shallow.L0 == 1.0);

    auto deep = rescale_audit(net, 0, std::exp(-4.0) / 2, 4);
    CHECK_FALSE(deep.fallback);
    CHECK(deep.g.size() == 3);
    CHECK(deep.L0 >= 1.0);
    CHECK(std::isfinite(deep.L0));

    auto zz = parse_presentation("gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d");
    auto zb = std::make_shared<CuspedBall>(cusped_ball(zz, 4));
    NetOptions oz;
    oz.T = 4;
    oz.delta = 2;
    oz.margin = 1;
    oz.max_parabolic_distance = 0;
    oz.max_points = 0;
    auto zn = build_net(zb, oz);
    PointId home = zn.size();
    for (PointId p = 0; p < zn.size(); ++p)
      for (int h : zn.marks[p])
        if (zb->horoballs[static_cast<std::size_t>(h)].d_O == 0) home = p;
    REQUIRE(home < zn.size());
    const double r = std::exp(-zn.params.epsilon * (2 + zn.delta + 1)) / 2;
    auto gap = rescale_audit(zn, home, r, 0);
    CHECK(gap.orbit_gap);
    CHECK(gap.gap > 0);
  }
}
