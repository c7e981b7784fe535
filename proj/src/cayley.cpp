#include "hyparc/cayley.hpp"

#include <algorithm>
#include <numeric>

#include "hyparc/error.hpp"

namespace hyparc {
namespace {

struct Builder {
  const Presentation& p;
  CayleyBall ball;
  std::size_t budget;

  Builder(const Presentation& pres, std::size_t b) : p(pres), budget(b) {
    ball.presentation = &p;
    ball.alphabet_size = 2 * p.rank();
    add(p.engine->identity(), kUnreached, 0, 0);
  }

  void add(Element key, Vertex parent, Letter via, std::int32_t depth) {
    ball.index.emplace(key, ball.size());
    ball.keys.push_back(std::move(key));
    ball.parent.push_back(parent);
    ball.via.push_back(via);
    ball.depth.push_back(depth);
  }

  // All products keys[v] * letter for v in [begin, end), letters in rank order.
  std::vector<Element> products(std::size_t begin, std::size_t end, bool parallel) const {
    const auto a = static_cast<std::size_t>(ball.alphabet_size);
    std::vector<Element> out((end - begin) * a);
    const auto count = static_cast<long>(end - begin);
    const bool go = parallel && p.engine->thread_safe();
#pragma omp parallel for schedule(static) if (go)
    for (long i = 0; i < count; ++i)
      for (std::size_t r = 0; r < a; ++r)
        out[static_cast<std::size_t>(i) * a + r] =
            p.engine->multiply(ball.keys[begin + static_cast<std::size_t>(i)], letter_from_rank(static_cast<int>(r)));
    return out;
  }

  // Expands one breadth-first layer and merges it in sequential order.
  void expand(std::size_t begin, std::size_t end, bool parallel, int next_depth,
              const std::unordered_map<Element, int, ElementHash>* allowed = nullptr) {
    const auto a = static_cast<std::size_t>(ball.alphabet_size);
    auto prod = products(begin, end, parallel);
    for (std::size_t i = 0; i < end - begin; ++i) {
      for (std::size_t r = 0; r < a; ++r) {
        Element& key = prod[i * a + r];
        if (ball.index.count(key)) continue;
        if (allowed && !allowed->count(key)) continue;
        add(std::move(key), static_cast<Vertex>(begin + i), letter_from_rank(static_cast<int>(r)), next_depth);
        if (ball.keys.size() > budget)
          throw budget_error("vertex budget of " + std::to_string(budget) + " exceeded at radius " +
                             std::to_string(next_depth));
      }
    }
  }

  void finish(bool parallel) {
    const auto a = static_cast<std::size_t>(ball.alphabet_size);
    auto prod = products(0, ball.keys.size(), parallel);
    ball.step.assign(prod.size(), kUnreached);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < prod.size(); ++i) {
      auto it = ball.index.find(prod[i]);
      if (it == ball.index.end()) continue;
      ball.step[i] = it->second;
      auto v = static_cast<Vertex>(i / a);
      if (v < it->second) edges.emplace_back(v, it->second);
    }
    ball.graph = Graph::from_edges(ball.size(), std::move(edges));
  }
};

CayleyBall build_ball(const Presentation& p, int R, std::size_t budget, bool parallel) {
  if (R < 0) throw usage_error("radius must be nonnegative");
  if (R > p.engine->reliable_radius())
    throw usage_error("radius " + std::to_string(R) + " exceeds the backend's reliable radius " +
                      std::to_string(p.engine->reliable_radius()));
  Builder b(p, budget);
  std::size_t begin = 0;
  for (int d = 0; d < R; ++d) {
    std::size_t end = b.ball.keys.size();
    b.expand(begin, end, parallel, d + 1);
    begin = end;
  }
  b.ball.radius = R;
  b.finish(parallel);
  return std::move(b.ball);
}

}  // namespace

GroupWord CayleyBall::word(Vertex v) const {
  GroupWord w;
  for (; parent[static_cast<std::size_t>(v)] != kUnreached; v = parent[static_cast<std::size_t>(v)])
    w.letters.push_back(via[static_cast<std::size_t>(v)]);
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

Vertex CayleyBall::find(const Element& e) const {
  auto it = index.find(e);
  return it == index.end() ? kUnreached : it->second;
}

std::int32_t CayleyBall::distance(Vertex u, Vertex v) const {
  if (u == v) return 0;
  Element e = presentation->element(concat(inverse(word(u)), word(v)));
  if (Vertex x = find(e); x != kUnreached && full_ball) return depth[static_cast<std::size_t>(x)];
  return bfs(graph, u)[static_cast<std::size_t>(v)];
}

CayleyBall cayley_ball(const Presentation& p, int R, std::size_t vertex_budget) {
  return build_ball(p, R, vertex_budget, true);
}

CayleyBall cayley_ball_serial(const Presentation& p, int R, std::size_t vertex_budget) {
  return build_ball(p, R, vertex_budget, false);
}

CayleyBall cayley_tube(const Presentation& p, const std::vector<GroupWord>& words, int width,
                       std::size_t vertex_budget) {
  // Multi-source neighbourhood of every prefix, collected as a key set.
  std::unordered_map<Element, int, ElementHash> allowed;
  std::vector<Element> frontier;
  auto seed = [&](Element k) {
    if (allowed.emplace(k, 0).second) frontier.push_back(std::move(k));
  };
  seed(p.engine->identity());
  for (const auto& w : words) {
    Element k = p.engine->identity();
    for (Letter l : w.letters) {
      k = p.engine->multiply(k, l);
      seed(k);
    }
  }
  const int a = 2 * p.rank();
  for (int layer = 1; layer <= width; ++layer) {
    std::vector<Element> prod(frontier.size() * static_cast<std::size_t>(a));
    const auto count = static_cast<long>(frontier.size());
#pragma omp parallel for schedule(static) if (p.engine->thread_safe())
    for (long i = 0; i < count; ++i)
      for (int r = 0; r < a; ++r)
        prod[static_cast<std::size_t>(i * a + r)] = p.engine->multiply(frontier[static_cast<std::size_t>(i)], letter_from_rank(r));
    std::vector<Element> next;
    for (auto& k : prod) {
      if (allowed.emplace(k, layer).second) next.push_back(std::move(k));
      if (allowed.size() > vertex_budget)
        throw budget_error("tube exceeded vertex budget of " + std::to_string(vertex_budget));
    }
    frontier = std::move(next);
  }

  Builder b(p, vertex_budget);
  std::size_t begin = 0;
  for (int d = 0; begin < b.ball.keys.size(); ++d) {
    std::size_t end = b.ball.keys.size();
    b.expand(begin, end, true, d + 1, &allowed);
    begin = end;
  }
  b.ball.full_ball = false;
  b.ball.radius = b.ball.depth.empty() ? 0 : b.ball.depth.back();
  b.finish(true);
  return std::move(b.ball);
}

std::vector<CosetFragment> coset_fragments(const CayleyBall& ball, const std::vector<int>& subset,
                                           int peripheral_index) {
  const auto n = static_cast<std::size_t>(ball.size());
  std::vector<Vertex> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](Vertex v) {
    while (root[static_cast<std::size_t>(v)] != v) {
      root[static_cast<std::size_t>(v)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
      v = root[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (Vertex v = 0; v < ball.size(); ++v) {
    for (int g : subset) {
      Vertex u = ball.neighbor(v, static_cast<Letter>(g + 1));
      if (u == kUnreached) continue;
      Vertex a = find(v), b = find(u);
      if (a != b) root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  // Roots are the smallest member, so fragments come out ordered by it.
  std::vector<CosetFragment> out;
  std::vector<std::int32_t> slot(n, -1);
  for (Vertex v = 0; v < ball.size(); ++v) {
    Vertex r = find(v);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(out.size());
      out.push_back({peripheral_index, {}, v, ball.depth[static_cast<std::size_t>(v)]});
    }
    auto& f = out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])];
    f.members.push_back(v);
    if (ball.depth[static_cast<std::size_t>(v)] < f.distance) {
      f.distance = ball.depth[static_cast<std::size_t>(v)];
      f.nearest = v;
    }
  }
  return out;
}

std::vector<std::uint16_t> fragment_metric(const CayleyBall& ball, const CosetFragment& f,
                                           const std::vector<int>& subset) {
  const std::size_t m = f.members.size();
  std::unordered_map<Vertex, std::int32_t> local;
  for (std::size_t i = 0; i < m; ++i) local.emplace(f.members[i], static_cast<std::int32_t>(i));
  std::vector<std::vector<std::int32_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (int g : subset)
      for (Letter l : {static_cast<Letter>(g + 1), static_cast<Letter>(-(g + 1))}) {
        Vertex u = ball.neighbor(f.members[i], l);
        if (auto it = local.find(u); u != kUnreached && it != local.end()) adj[i].push_back(it->second);
      }
  std::vector<std::uint16_t> dist(m * m, 0xffff);
  const auto count = static_cast<long>(m);
#pragma omp parallel for schedule(dynamic, 16)
  for (long s = 0; s < count; ++s) {
    std::uint16_t* row = dist.data() + static_cast<std::size_t>(s) * m;
    std::vector<std::int32_t> queue{static_cast<std::int32_t>(s)};
    row[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto v = static_cast<std::size_t>(queue[head]);
      for (auto u : adj[v]) {
        if (row[u] != 0xffff) continue;
        row[u] = static_cast<std::uint16_t>(row[v] + 1);
        queue.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace hyparc
