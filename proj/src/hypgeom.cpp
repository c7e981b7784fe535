#include "hyparc/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <limits>
#include <numeric>
#include <random>

#include "hyparc/error.hpp"

namespace hyparc {

double gromov_product(const CuspedBall& ball, Vertex w, Vertex x, Vertex y) {
  const auto& dw = ball.distances_from(w);
  return gromov_product(dw[static_cast<std::size_t>(x)], dw[static_cast<std::size_t>(y)], ball.distance(x, y));
}

MetricMatrix restrict_metric(const Graph& g, const std::vector<Vertex>& vertices) {
  auto t = distance_table(g, vertices, vertices);
  MetricMatrix m{vertices.size(), std::vector<double>(t.data.begin(), t.data.end())};
  return m;
}

namespace {

struct Best {
  double delta = -1.0;
  std::array<std::size_t, 4> q{};
  std::uint64_t count = 0;

  void offer(double d, const std::array<std::size_t, 4>& at) {
    if (d > delta || (d == delta && at < q)) {
      delta = d;
      q = at;
    }
  }
};

// Scans all quadruples whose smallest index is i.
void scan_from(const MetricMatrix& m, std::size_t i, Best& best) {
  const std::size_t n = m.n;
  for (std::size_t j = i + 1; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      const double ij = m(i, j), ik = m(i, k), jk = m(j, k);
      for (std::size_t l = k + 1; l < n; ++l) {
        double s1 = ij + m(k, l), s2 = ik + m(j, l), s3 = m(i, l) + jk;
        double hi = std::max({s1, s2, s3});
        double lo = std::min({s1, s2, s3});
        double mid = s1 + s2 + s3 - hi - lo;
        best.offer(0.5 * (hi - mid), {i, j, k, l});
        ++best.count;
      }
    }
}

HyperbolicityEstimate to_estimate(const Best& b) {
  HyperbolicityEstimate e;
  e.delta = std::max(0.0, b.delta);
  e.samples = b.count;
  e.witness = b.q;
  return e;
}

}  // namespace

HyperbolicityEstimate delta_fourpoint_serial(const MetricMatrix& m) {
  if (m.n < 4) throw usage_error("four-point condition needs at least 4 points");
  Best best;
  for (std::size_t i = 0; i < m.n; ++i) scan_from(m, i, best);
  return to_estimate(best);
}

HyperbolicityEstimate delta_fourpoint(const MetricMatrix& m) {
  if (m.n < 4) throw usage_error("four-point condition needs at least 4 points");
  const auto n = static_cast<long>(m.n);
  std::vector<Best> per_row(m.n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) scan_from(m, static_cast<std::size_t>(i), per_row[static_cast<std::size_t>(i)]);
  // Fixed-order reduction keeps the witness deterministic.
  Best best;
  for (const auto& b : per_row) {
    if (b.count) best.offer(b.delta, b.q);
    best.count += b.count;
  }
  return to_estimate(best);
}

HyperbolicityEstimate delta_fourpoint(const Graph& g, std::uint64_t seed, std::size_t exhaustive_limit,
                                      std::size_t sample_points) {
  std::vector<Vertex> pts(static_cast<std::size_t>(g.size()));
  std::iota(pts.begin(), pts.end(), 0);
  if (pts.size() > exhaustive_limit) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < sample_points; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pts.size() - 1);
      std::swap(pts[i], pts[pick(rng)]);
    }
    pts.resize(sample_points);
    std::sort(pts.begin(), pts.end());
  }
  auto est = delta_fourpoint(restrict_metric(g, pts));
  for (auto& w : est.witness) w = static_cast<std::size_t>(pts[w]);
  return est;
}

std::vector<Vertex> geodesic(const CayleyBall& ball, Vertex x, Vertex y) {
  auto dist = bfs(ball.graph, y);
  if (dist[static_cast<std::size_t>(x)] == kUnreached) throw contract_error("geodesic endpoints are disconnected");
  std::vector<Vertex> path{x};
  while (x != y) {
    for (int r = 0; r < ball.alphabet_size; ++r) {
      Vertex u = ball.neighbor(x, letter_from_rank(r));
      if (u != kUnreached && dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(x)] - 1) {
        x = u;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

std::vector<Vertex> geodesic(const CuspedBall& ball, Vertex x, Vertex y) {
  auto path = shortest_path(ball.graph, x, y);
  if (path.empty()) throw contract_error("geodesic endpoints are disconnected");
  return path;
}

std::vector<double> chebyshev_fit(const std::vector<std::vector<double>>& A, const std::vector<double>& b) {
  const std::size_t rows = A.size();
  const std::size_t vars = rows ? A[0].size() : 0;
  double T0 = 0.0;
  for (double v : b) T0 = std::max(T0, std::abs(v));
  // Substitute t = T0 - u and maximise u, so the origin is feasible:
  //   A x + u <= b + T0,  -A x + u <= T0 - b,  u <= T0.
  const std::size_t m = 2 * rows + 1, nv = vars + 1, width = nv + m + 1;
  std::vector<double> tab((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return tab[r * width + c]; };
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) {
      at(i, j) = A[i][j];
      at(rows + i, j) = -A[i][j];
    }
    at(i, vars) = at(rows + i, vars) = 1.0;
    at(i, width - 1) = b[i] + T0;
    at(rows + i, width - 1) = T0 - b[i];
  }
  at(2 * rows, vars) = 1.0;
  at(2 * rows, width - 1) = T0;
  for (std::size_t i = 0; i < m; ++i) at(i, nv + i) = 1.0;
  at(m, vars) = -1.0;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = nv + i;

  constexpr double tol = 1e-12;
  while (true) {
    // Bland's rule: smallest entering index, smallest leaving basis index.
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c)
      if (at(m, c) < -tol) {
        enter = c;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (at(r, enter) <= tol) continue;
      double q = at(r, width - 1) / at(r, enter);
      if (q < ratio - tol || (std::abs(q - ratio) <= tol && basis[r] < basis[leave])) {
        ratio = q;
        leave = r;
      }
    }
    if (leave == m) break;  // unbounded cannot happen since u <= T0
    double piv = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || at(r, enter) == 0.0) continue;
      double f = at(r, enter);
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }
  std::vector<double> z(nv, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < nv) z[basis[r]] = at(r, width - 1);
  z[vars] = T0 - z[vars];
  return z;
}

MetricMatrix TreeApprox::tree_metric() const {
  std::size_t nodes = points.size();
  for (const auto& e : edges) nodes = std::max({nodes, e[0] + 1, e[1] + 1});
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i][0]].emplace_back(edges[i][1], lengths[i]);
    adj[edges[i][1]].emplace_back(edges[i][0], lengths[i]);
  }
  MetricMatrix m{points.size(), std::vector<double>(points.size() * points.size(), 0.0)};
  for (std::size_t s = 0; s < points.size(); ++s) {
    std::vector<double> dist(nodes, -1.0);
    std::vector<std::size_t> stack{s};
    dist[s] = 0.0;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (auto [u, len] : adj[v])
        if (dist[u] < 0) {
          dist[u] = dist[v] + len;
          stack.push_back(u);
        }
    }
    for (std::size_t t = 0; t < points.size(); ++t) m.d[s * points.size() + t] = dist[t];
  }
  return m;
}

namespace {

// Dendrogram of the max-min closure of Gromov products at basepoint p.
TreeApprox linking_tree(const MetricMatrix& m, std::size_t p) {
  const std::size_t n = m.n;
  std::vector<double> prod(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) prod[x * n + y] = x == y ? m(p, x) : gromov_product(m(p, x), m(p, y), m(x, y));
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        prod[x * n + y] = std::max(prod[x * n + y], std::min(prod[x * n + z], prod[z * n + y]));

  TreeApprox t;
  t.points.resize(n);
  std::iota(t.points.begin(), t.points.end(), 0);
  t.basepoint = p;
  std::vector<double> height(n);
  for (std::size_t x = 0; x < n; ++x) height[x] = m(p, x);
  std::vector<std::size_t> top(n), cluster(n), parent(n, SIZE_MAX);
  std::iota(top.begin(), top.end(), 0);
  std::iota(cluster.begin(), cluster.end(), 0);
  std::vector<bool> dead(n, false);
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pairs.emplace_back(-prod[x * n + y], x, y);
  std::sort(pairs.begin(), pairs.end());
  // Clusters merging at a height equal to an existing branch point join it,
  // so equal products give a single multifurcating node.
  for (auto [negh, x, y] : pairs) {
    std::size_t cx = cluster[x], cy = cluster[y];
    if (cx == cy) continue;
    const double h = -negh;
    std::size_t a = top[cx], b = top[cy];
    bool a_branch = a >= n && height[a] == h, b_branch = b >= n && height[b] == h;
    std::size_t node;
    if (a_branch && b_branch) {
      for (auto& q : parent)
        if (q == b) q = a;
      dead[b] = true;
      node = a;
    } else if (a_branch) {
      parent[b] = node = a;
    } else if (b_branch) {
      parent[a] = node = b;
    } else {
      node = height.size();
      height.push_back(h);
      parent.push_back(SIZE_MAX);
      dead.push_back(false);
      parent[a] = parent[b] = node;
    }
    for (std::size_t v = 0; v < n; ++v)
      if (cluster[v] == cy) cluster[v] = cx;
    top[cx] = node;
  }
  for (std::size_t v = 0; v < height.size(); ++v)
    if (!dead[v] && parent[v] != SIZE_MAX) {
      t.edges.push_back({parent[v], v});
      t.lengths.push_back(height[v] - height[parent[v]]);
    }
  return t;
}

// Leaf-pair path incidence of the tree's edges.
std::vector<std::vector<double>> incidence(const TreeApprox& t) {
  const std::size_t n = t.points.size();
  std::size_t nodes = n;
  for (const auto& e : t.edges) nodes = std::max({nodes, e[0] + 1, e[1] + 1});
  std::vector<std::size_t> up(nodes, nodes), up_edge(nodes, 0), level(nodes, 0);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    up[t.edges[i][1]] = t.edges[i][0];
    up_edge[t.edges[i][1]] = i;
  }
  auto lvl = [&](std::size_t v) {
    std::size_t d = 0;
    while (up[v] != nodes) v = up[v], ++d;
    return d;
  };
  for (std::size_t v = 0; v < nodes; ++v) level[v] = lvl(v);
  std::vector<std::vector<double>> A;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<double> row(t.edges.size(), 0.0);
      std::size_t a = x, b = y;
      while (a != b) {
        if (level[a] < level[b]) std::swap(a, b);
        row[up_edge[a]] = 1.0;
        a = up[a];
      }
      A.push_back(std::move(row));
    }
  return A;
}

}  // namespace

TreeApprox tree_approx(const MetricMatrix& m, std::size_t max_points) {
  if (m.n > max_points)
    throw usage_error("tree approximation limited to " + std::to_string(max_points) + " points");
  TreeApprox best;
  best.additive_error = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < m.n; ++p) {
    TreeApprox t = linking_tree(m, p);
    if (m.n >= 2) {
      auto A = incidence(t);
      std::vector<double> b;
      for (std::size_t x = 0; x < m.n; ++x)
        for (std::size_t y = x + 1; y < m.n; ++y) b.push_back(m(x, y));
      auto z = chebyshev_fit(A, b);
      t.lengths.assign(z.begin(), z.end() - 1);
    }
    auto tm = t.tree_metric();
    t.additive_error = 0.0;
    for (std::size_t i = 0; i < m.d.size(); ++i) t.additive_error = std::max(t.additive_error, std::abs(tm.d[i] - m.d[i]));
    if (t.additive_error < best.additive_error - 1e-12) best = std::move(t);
  }
  return best;
}

}  // namespace hyparc
