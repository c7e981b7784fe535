#include <benchmark/benchmark.h>

#include <algorithm>
#include <memory>
#include <random>

#include "hyparc/embed.hpp"

using namespace hyparc;

namespace {

const Presentation& genus2() {
  static Presentation p = parse_presentation("gens a b c d; rels [a,b][c,d]");
  return p;
}

const CayleyBall& genus2_ball() {
  static CayleyBall b = cayley_ball(genus2(), 5);
  return b;
}

std::vector<Vertex> first_vertices(Vertex n) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) out.push_back(v);
  return out;
}

const MetricMatrix& small_metric() {
  static MetricMatrix m = restrict_metric(genus2_ball().graph, first_vertices(60));
  return m;
}

// Seeded king-move walk across the grid with loops cut.
Arc walk(const LatticeNet& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const long N = net.side();
  long i = 0, j = N / 2;
  Arc a{net.id(i, j)};
  while (i < N) {
    long ni = std::clamp(i + static_cast<long>(rng() % 3) - 1 + static_cast<long>(rng() % 2), 0L, N);
    long nj = std::clamp(j + static_cast<long>(rng() % 3) - 1, 0L, N);
    if (ni == i && nj == j) continue;
    i = ni, j = nj;
    a.push_back(net.id(i, j));
  }
  return cut_loops(a);
}

const LatticeNet& grid() {
  static LatticeNet g = grid_net(64);
  return g;
}

const Arc& grid_arc() {
  static Arc a = walk(grid(), 5);
  return a;
}

const Presentation& free_group() {
  static Presentation p = parse_presentation("gens a b; rels;");
  return p;
}

const ConeEmbedding& cone() {
  static auto ball = std::make_shared<CuspedBall>(cusped_ball(free_group(), 7));
  static BoundaryNet net = [] {
    NetOptions o;
    o.T = 5;
    return build_net(ball, o);
  }();
  static ConeEmbedding emb = [] {
    Arc arc;
    for (PointId z = 0; z < net.size() && z < 24; ++z) arc.push_back(z);
    return embed_quadrant(net, arc, 5);
  }();
  return emb;
}

}  // namespace

static void BM_distance_table_serial(benchmark::State& s) {
  auto src = first_vertices(64);
  for (auto _ : s) benchmark::DoNotOptimize(distance_table_serial(genus2_ball().graph, src, src));
}
static void BM_distance_table(benchmark::State& s) {
  auto src = first_vertices(64);
  for (auto _ : s) benchmark::DoNotOptimize(distance_table(genus2_ball().graph, src, src));
}
static void BM_delta_fourpoint_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(delta_fourpoint_serial(small_metric()));
}
static void BM_delta_fourpoint(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(delta_fourpoint(small_metric()));
}
static void BM_cayley_ball_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(cayley_ball_serial(genus2(), 5));
}
static void BM_cayley_ball(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(cayley_ball(genus2(), 5));
}
static void BM_verify_quasi_arc_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(verify_quasi_arc_serial(grid(), grid_arc(), 10.0));
}
static void BM_verify_quasi_arc(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(verify_quasi_arc(grid(), grid_arc(), 10.0));
}
static void BM_local_structure_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(local_structure_serial(grid(), grid_arc(), 0.1, 0.5, 4.0));
}
static void BM_local_structure(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(local_structure(grid(), grid_arc(), 0.1, 0.5, 4.0));
}
static void BM_distortion_audit_serial(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(distortion_audit_serial(cone()));
}
static void BM_distortion_audit(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(distortion_audit(cone()));
}

BENCHMARK(BM_distance_table_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distance_table)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delta_fourpoint_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delta_fourpoint)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cayley_ball_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cayley_ball)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_quasi_arc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_quasi_arc)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_structure_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_local_structure)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distortion_audit_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_distortion_audit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
