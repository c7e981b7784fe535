#include <doctest.h>

#include <cmath>

#include "hyparc/audits.hpp"
#include "hyparc/boundary.hpp"

using namespace hyparc;

namespace {

std::shared_ptr<const CuspedBall> ball_of(const char* text, int R) {
  static std::vector<std::unique_ptr<Presentation>> keep;
  keep.push_back(std::make_unique<Presentation>(parse_presentation(text)));
  return std::make_shared<CuspedBall>(cusped_ball(*keep.back(), R));
}

}  // namespace

TEST_SUITE("boundary") {
  TEST_CASE("free group net is the tree boundary") {
    auto ball = ball_of("gens a b; rels;", 6);
    for (int T : {3, 4}) {
      NetOptions o;
      o.T = T;
      auto net = build_net(ball, o);
      CHECK(net.delta == 0);
      CHECK(net.params.epsilon == 1.0);
      CHECK(net.size() == static_cast<std::size_t>(4 * std::pow(3, T - 1)));
      for (PointId x = 0; x < net.size(); ++x)
        for (PointId y = x + 1; y < net.size(); ++y) {
          auto wx = ball->cayley.word(net.witness[x]).letters, wy = ball->cayley.word(net.witness[y]).letters;
          std::size_t k = 0;
          while (k < wx.size() && k < wy.size() && wx[k] == wy[k]) ++k;
          CHECK(net.dist(x, y) == doctest::Approx(std::exp(-static_cast<double>(k))));
        }
      auto fam = limit_sets(net);
      CHECK(fam.sets.empty());
    }
  }

  TEST_CASE("two ends of Z") {
    auto ball = ball_of("gens a; rels;", 6);
    NetOptions o;
    o.T = 3;
    auto net = build_net(ball, o);
    REQUIRE(net.size() == 2);
    CHECK(net.dist(0, 1) == doctest::Approx(1.0));
  }

  TEST_CASE("classes are separated by the merge rule") {
    auto ball = ball_of("gens a b c d; rels [a,b][c,d];", 6);
    NetOptions o;
    o.T = 3;
    o.delta = 1;
    auto net = build_net(ball, o);
    CHECK(net.margin == 3);
    for (PointId x = 0; x < net.size(); ++x)
      for (PointId y = x + 1; y < net.size(); ++y) CHECK(net.gromov(x, y) <= net.T - net.margin);
    std::size_t total = 0;
    for (auto s : net.class_size) total += s;
    CHECK(total == net.candidates);
  }

  TEST_CASE("parabolic points of the free product of two planes") {
    auto ball = ball_of("gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d", 4);
    NetOptions o;
    o.T = 3;
    o.delta = 2;
    o.margin = 1;
    o.max_parabolic_distance = 1;
    o.max_points = 0;
    auto net = build_net(ball, o);
    auto fam = limit_sets(net);
    REQUIRE(fam.sets.size() >= 2);
    bool home = false, next = false;
    for (const auto& V : fam.sets) {
      CHECK(V.members.size() == 1);
      CHECK(V.kind == ObstacleKind::parabolic);
      CHECK(V.scale == doctest::Approx(std::exp(-net.params.epsilon * V.d_H)));
      home = home || V.d_H == 0;
      next = next || V.d_H == 1;
    }
    CHECK(home);
    CHECK(next);
    auto sep = separation_audit(fam.sets, net, net.params.epsilon);
    CHECK_FALSE(sep.empty);
    CHECK(sep.inv_C > 0);
    auto single = separation_audit({fam.sets[0]}, net, net.params.epsilon);
    CHECK(single.empty);
  }

  TEST_CASE("axis of a in the genus-2 group") {
    auto g = parse_presentation("gens a b c d; rels [a,b][c,d]; hypsub a");
    NetOptions o;
    o.T = 6;
    auto net = build_ray_net(g, 32, 1, o);
    auto fam = limit_sets(net);
    const ObstacleSet* axis = nullptr;
    for (const auto& V : fam.sets)
      if (V.kind == ObstacleKind::hyperbolic && V.d_H == 0) axis = &V;
    REQUIRE(axis != nullptr);
    REQUIRE(axis->members.size() == 2);
    std::vector<GroupWord> words;
    for (PointId p : axis->members) words.push_back(net.host->cayley.word(net.witness[p]));
    GroupWord plus, minus;
    plus.letters.assign(6, 1);
    minus.letters.assign(6, -1);
    CHECK(((words[0] == plus && words[1] == minus) || (words[0] == minus && words[1] == plus)));
  }
}
