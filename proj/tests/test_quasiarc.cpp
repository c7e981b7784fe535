#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hyparc/quasiarc.hpp"

using namespace hyparc;

namespace {

Arc row(const LatticeNet& net, long j, long from, long to) {
  Arc a;
  for (long i = from; i <= to; ++i) a.push_back(net.id(i, j));
  return a;
}

// Seeded king-move walk with loops cut, from the left edge to the right.
Arc zigzag(const LatticeNet& net, std::mt19937_64& rng) {
  const long N = net.side();
  long i = 0, j = static_cast<long>(rng() % static_cast<unsigned long>(N + 1));
  Arc a{net.id(i, j)};
  while (i < N) {
    long di = static_cast<long>(rng() % 3) - 1 + (rng() % 2 == 0 ? 1 : 0);
    long dj = static_cast<long>(rng() % 3) - 1;
    di = std::clamp(di, -1L, 1L);
    long ni = std::clamp(i + di, 0L, N), nj = std::clamp(j + dj, 0L, N);
    if (ni == i && nj == j) continue;
    i = ni, j = nj;
    a.push_back(net.id(i, j));
  }
  return cut_loops(a);
}

// Exhaustive max over pairs of diam(arc[x..y]) / rho(x, y).
double brute_lambda(const Net& net, const Arc& arc) {
  double worst = 0.0;
  for (std::size_t x = 0; x < arc.size(); ++x) {
    double diam = 0.0;
    for (std::size_t y = x + 1; y < arc.size(); ++y) {
      for (std::size_t z = x; z < y; ++z) diam = std::max(diam, net.dist(arc[z], arc[y]));
      worst = std::max(worst, diam / net.dist(arc[x], arc[y]));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("quasiarc") {
  TEST_CASE("loops and simplicity") {
    Arc a{1, 2, 3, 2, 4};
    CHECK(!is_simple(a));
    Arc c = cut_loops(a);
    CHECK(c == Arc{1, 2, 4});
    CHECK(is_simple(c));
  }

  TEST_CASE("follows") {
    auto net = grid_net(32);
    const long N = net.side();
    Arc A = row(net, 0, 0, N);
    CHECK(follows_check(net, A, A, 0.0).follows);
    CHECK(follow_distance(net, A, A) == doctest::Approx(0.0));

    Arc B;
    for (long i = 0; i <= 12; ++i) B.push_back(net.id(i, 0));
    for (long j = 1; j <= 5; ++j) B.push_back(net.id(12, j));
    for (long j = 4; j >= 0; --j) B.push_back(net.id(13, j));
    for (long i = 14; i <= N; ++i) B.push_back(net.id(i, 0));
    const double h = net.spacing();
    CHECK(follow_distance(net, B, A) == doctest::Approx(5 * h));
    auto f = follows_check(net, B, A, 4.5 * h);
    CHECK(!f.follows);
    CHECK(net.y(B[f.witness]) == 5);
    CHECK(follows_check(net, B, A, 5 * h).follows);

    // Monotonicity: the reversed arc does not follow A at small iota.
    Arc R(A.rbegin(), A.rend());
    CHECK(!follows_check(net, R, A, 0.5).follows);
  }

  TEST_CASE("path search respects the allowed set") {
    auto net = grid_net(16);
    PathSearch search(net);
    const long N = net.side();
    Arc p = search.find(net.id(0, 8), net.id(N, 8), [&](PointId z) { return net.x(z) != 8 || net.y(z) > 12; });
    REQUIRE(!p.empty());
    CHECK(p.front() == net.id(0, 8));
    CHECK(p.back() == net.id(N, 8));
    for (PointId z : p) CHECK((net.x(z) != 8 || net.y(z) > 12));
    for (std::size_t k = 1; k < p.size(); ++k) CHECK(net.dist(p[k - 1], p[k]) <= net.resolution());
    CHECK(search.find(net.id(0, 8), net.id(N, 8), [&](PointId z) { return net.x(z) != 8; }).empty());
  }

  TEST_CASE("local structure serial and parallel agree") {
    auto net = grid_net(32);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5; ++t) {
      Arc a = zigzag(net, rng);
      auto p = local_structure(net, a, 0.1, 0.5, 4.0);
      auto s = local_structure_serial(net, a, 0.1, 0.5, 4.0);
      CHECK(p.holds == s.holds);
      CHECK(p.measured_S == doctest::Approx(s.measured_S));
    }
  }

  TEST_CASE("straighten") {
    auto net = grid_net(64);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
      Arc a = zigzag(net, rng);
      const double iota = 0.05;
      StraightenReport rep;
      Arc b = straighten(net, a, iota, &rep);
      CHECK(rep.ok);
      CHECK(is_simple(b));
      CHECK(b.front() == a.front());
      CHECK(b.back() == a.back());
      for (std::size_t k = 1; k < b.size(); ++k) CHECK(net.dist(b[k - 1], b[k]) <= net.resolution());
      CHECK(local_structure_serial(net, b, iota, 0.5, 4.0).holds);
      CHECK(follows_check(net, b, a, iota).follows);
    }
  }

  TEST_CASE("scale filtration") {
    const double r = 0.1, D0 = 1.0;
    std::vector<ObstacleSet> fam(4);
    fam[0].scale = D0;
    fam[1].scale = D0 * std::pow(r, 1.5);
    fam[2].scale = D0 * r;
    fam[3].scale = D0 * std::pow(r, 3.2);
    auto cls = scale_filtration(fam, r, D0);
    REQUIRE(cls.size() == 4);
    CHECK(cls[0] == 1);
    CHECK(cls[1] == 2);
    CHECK(cls[2] == 2);
    CHECK(cls[3] == 4);
    for (std::size_t k = 0; k < fam.size(); ++k) {
      const double q = fam[k].scale / D0;
      CHECK(std::pow(r, cls[k]) < q * (1 + 1e-12));
      CHECK(q <= std::pow(r, cls[k] - 1) * (1 + 1e-12));
    }
  }

  TEST_CASE("proof regime") {
    QuasiArcParams p;
    p.r = 0.5;
    p.L = 1.0;
    CHECK(!proof_regime(p));
  }

  TEST_CASE("detour") {
    auto net = grid_net(64);
    PathSearch search(net);
    const double h = net.spacing();
    QuasiArcParams params;
    params.L = 1.0;
    auto never = [](PointId) { return false; };

    ObstacleSet far;
    for (long i = 30; i <= 34; ++i)
      for (long j = 50; j <= 54; ++j) far.members.push_back(net.id(i, j));
    far.scale = 4 * h;
    Arc a = row(net, 32, 0, net.side());
    DetourReport rep;
    CHECK(detour(net, a, far, 3 * h, params, search, never, &rep) == a);
    CHECK(rep.ok);
    CHECK(rep.crossings == 0);

    ObstacleSet mid;
    for (long i = 30; i <= 34; ++i)
      for (long j = 30; j <= 34; ++j) mid.members.push_back(net.id(i, j));
    mid.scale = 4 * h;
    const double rp = 3 * h;
    Arc b = detour(net, a, mid, rp, params, search, never, &rep);
    REQUIRE(rep.ok);
    CHECK(rep.crossings == 1);
    CHECK(b.front() == a.front());
    CHECK(b.back() == a.back());
    CHECK(is_simple(b));
    auto sd = net.set_distance(mid.members);
    for (PointId z : b) CHECK((*sd)(z) >= rp - 1e-12);
    CHECK(rep.follow == doctest::Approx(follow_distance(net, b, a)));
    CHECK(rep.follow <= 4 * rp + mid.scale);
  }

  TEST_CASE("empty family quasi-arc") {
    auto net = grid_net(32);
    QuasiArcParams params;
    params.r = 0.5;
    params.L = 1.0;
    auto res = build_quasi_arc(net, {}, params);
    CHECK(res.report.pass);
    CHECK(is_simple(res.arc));
    CHECK(arc_diameter(net, res.arc) >= 0.5);
    auto v = verify_quasi_arc_serial(net, res.arc, std::max(res.report.lambda_arc, 1.0));
    CHECK(v.pass);
    CHECK(v.lambda == doctest::Approx(brute_lambda(net, res.arc)));
  }

  TEST_CASE("stage zero termination") {
    auto net = grid_net(8);
    QuasiArcParams params;
    params.r = 0.01;
    params.L = 1.0;
    params.D0 = 1.0;
    auto res = build_quasi_arc(net, {}, params);
    CHECK(res.report.stage0_terminated);
    REQUIRE(!res.report.stages.empty());
    CHECK(res.report.stages.front().n == 1);
  }

  TEST_CASE("verify") {
    auto net = grid_net(16);
    Arc line = row(net, 3, 0, net.side());
    auto v = verify_quasi_arc(net, line, 1.0);
    CHECK(v.pass);
    CHECK(v.simple);
    CHECK(v.lambda == doctest::Approx(1.0));

    Arc back = row(net, 3, 0, 10);
    back.push_back(net.id(9, 3));
    CHECK(!verify_quasi_arc(net, back, 100.0).pass);

    // A U-turn whose ends are close has a large subarc-to-chord ratio.
    Arc u = row(net, 0, 0, 10);
    for (long j = 1; j <= 2; ++j) u.push_back(net.id(10, j));
    for (long i = 9; i >= 0; --i) u.push_back(net.id(i, 2));
    auto w = verify_quasi_arc_serial(net, u, 1.0);
    CHECK(!w.pass);
    CHECK(w.lambda == doctest::Approx(brute_lambda(net, u)));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
      Arc a = zigzag(net, rng);
      auto p = verify_quasi_arc(net, a, 3.0, 0.3);
      auto s = verify_quasi_arc_serial(net, a, 3.0, 0.3);
      CHECK(p.pass == s.pass);
      CHECK(p.lambda == doctest::Approx(s.lambda));
    }
  }
}
