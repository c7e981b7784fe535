#include <doctest.h>

#include <algorithm>
#include <set>

#include "hyparc/cayley.hpp"
#include "hyparc/error.hpp"
#include "hyparc/presentation.hpp"

using namespace hyparc;

namespace {

// Words of length <= R up to equality decided by `same`.
std::size_t brute_force_ball(const Presentation& p, int R, auto same) {
  std::vector<GroupWord> reps{GroupWord{}};
  std::vector<GroupWord> frontier{GroupWord{}};
  for (int r = 1; r <= R; ++r) {
    std::vector<GroupWord> next;
    for (const auto& w : frontier)
      for (Letter l : p.alphabet()) {
        GroupWord u = w;
        u.letters.push_back(l);
        bool seen = false;
        for (const auto& v : reps)
          if (same(u, v)) {
            seen = true;
            break;
          }
        if (!seen) {
          reps.push_back(u);
          next.push_back(u);
        }
      }
    frontier = std::move(next);
  }
  return reps.size();
}

}  // namespace

TEST_SUITE("presentations") {
  TEST_CASE("parsing") {
    auto z = parse_presentation("gens a; rels;");
    CHECK(z.rank() == 1);
    CHECK(z.relators.empty());
    CHECK(z.backend == BackendTag::free);

    auto g = parse_presentation("gens a b c d; rels [a,b][c,d];");
    REQUIRE(g.relators.size() == 1);
    CHECK(g.relators[0].size() == 8);
    CHECK(g.backend == BackendTag::dehn);

    try {
      parse_presentation("gens a; rels [a,");
      FAIL("expected a syntax error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::usage);
    }
    CHECK_THROWS_AS(parse_presentation("gens a b; rels; parabolic a x"), Error);
  }

  TEST_CASE("reduce") {
    auto f = parse_presentation("gens a b; rels;");
    CHECK(reduce(f, f.parse_word("a.b.b^-1.a")) == f.parse_word("a.a"));
    auto z2 = parse_presentation("gens a b; rels [a,b];");
    CHECK(reduce(z2, z2.parse_word("a.b.a^-1")) == z2.parse_word("b"));
    auto g = parse_presentation("gens a b c d; rels [a,b][c,d];");
    CHECK(reduce(g, g.relators[0]).empty());
    CHECK(reduce(g, inverse(g.relators[0])).empty());
  }

  TEST_CASE("ball sizes") {
    auto z = parse_presentation("gens a; rels;");
    CHECK(cayley_ball(z, 3).size() == 7);
    auto z2 = parse_presentation("gens a b; rels [a,b];");
    CHECK(cayley_ball(z2, 2).size() == 13);
    for (int R = 1; R <= 6; ++R) CHECK(cayley_ball(z2, R).size() == 2 * R * R + 2 * R + 1);
    auto f2 = parse_presentation("gens a b; rels;");
    CHECK(cayley_ball(f2, 2).size() == 17);
  }

  TEST_CASE("genus-2 ball against Dehn's algorithm") {
    auto g = parse_presentation("gens a b c d; rels [a,b][c,d];");
    auto sym = symmetrize(g.relators);
    auto same = [&](const GroupWord& u, const GroupWord& v) {
      return dehn_reduce(sym, free_reduce(concat(inverse(u), v))).empty();
    };
    CHECK(cayley_ball(g, 3).size() == brute_force_ball(g, 3, same));
  }

  TEST_CASE("free product ball against normal forms") {
    auto zz = parse_presentation("gens a b c d; rels [a,b],[c,d];");
    auto same = [&](const GroupWord& u, const GroupWord& v) { return zz.element(u) == zz.element(v); };
    CHECK(cayley_ball(zz, 3).size() == brute_force_ball(zz, 3, same));
  }

  TEST_CASE("parallel ball equals serial ball") {
    auto g = parse_presentation("gens a b c d; rels [a,b][c,d];");
    auto par = cayley_ball(g, 4), ser = cayley_ball_serial(g, 4);
    CHECK(par.keys == ser.keys);
    CHECK(par.parent == ser.parent);
    CHECK(par.graph.targets == ser.graph.targets);
  }

  TEST_CASE("ball words are shortlex normal forms") {
    auto g = parse_presentation("gens a b c d; rels [a,b][c,d];");
    auto ball = cayley_ball(g, 3);
    for (Vertex v = 0; v < ball.size(); ++v) {
      auto w = ball.word(v);
      CHECK(static_cast<std::int32_t>(w.size()) == ball.depth[static_cast<std::size_t>(v)]);
      CHECK(g.engine->normal_form(w) == w);
    }
  }

  TEST_CASE("coset fragments") {
    auto zz = parse_presentation("gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d");
    auto ball = cayley_ball(zz, 2);
    auto frags = coset_fragments(ball, zz.parabolic[0]);
    REQUIRE(!frags.empty());
    CHECK(frags[0].distance == 0);
    CHECK(frags[0].members.size() == 13);
    std::set<std::int32_t> dist;
    for (const auto& f : frags) dist.insert(f.distance);
    CHECK(dist == std::set<std::int32_t>{0, 1, 2});

    auto is_in_P = [&](const GroupWord& w, const std::vector<int>& P) {
      for (Letter l : zz.engine->normal_form(w).letters)
        if (std::find(P.begin(), P.end(), generator_of(l)) == P.end()) return false;
      return true;
    };
    auto ball3 = cayley_ball(zz, 3);
    for (const auto& P : zz.parabolic) {
      auto fr = coset_fragments(ball3, P);
      // Brute-force classes: gP = hP iff g^-1 h in P; fragments may split a
      // coset only if the coset is disconnected inside the ball.
      std::vector<int> cls(static_cast<std::size_t>(ball3.size()), -1);
      int classes = 0;
      for (Vertex v = 0; v < ball3.size(); ++v) {
        if (cls[static_cast<std::size_t>(v)] >= 0) continue;
        cls[static_cast<std::size_t>(v)] = classes;
        for (Vertex u = v + 1; u < ball3.size(); ++u)
          if (cls[static_cast<std::size_t>(u)] < 0 &&
              is_in_P(concat(inverse(ball3.word(v)), ball3.word(u)), P))
            cls[static_cast<std::size_t>(u)] = classes;
        ++classes;
      }
      CHECK(fr.size() == static_cast<std::size_t>(classes));
      for (const auto& f : fr)
        for (Vertex v : f.members) CHECK(cls[static_cast<std::size_t>(v)] == cls[static_cast<std::size_t>(f.members[0])]);
    }

    auto f2 = parse_presentation("gens a b; rels;");
    auto b = cayley_ball(f2, 3);
    for (const auto& f : coset_fragments(b, {0})) {
      // maximal a-lines: consecutive members differ by a single a
      for (Vertex v : f.members) {
        auto w = b.word(v);
        auto n = b.neighbor(v, 1);
        if (n != kUnreached) CHECK(std::binary_search(f.members.begin(), f.members.end(), n));
        (void)w;
      }
    }
  }
}
