#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hyparc/cusped.hpp"

namespace hyparc {

struct VisualParams {
  double epsilon = 1.0;
  double C0 = 1.0;
};

/// Gromov product (x|y)_w = (d(w,x) + d(w,y) - d(x,y)) / 2.
inline double gromov_product(double dwx, double dwy, double dxy) { return 0.5 * (dwx + dwy - dxy); }
double gromov_product(const CuspedBall& ball, Vertex w, Vertex x, Vertex y);

/// Dense symmetric metric on n points, row-major.
struct MetricMatrix {
  std::size_t n = 0;
  std::vector<double> d;

  double operator()(std::size_t i, std::size_t j) const { return d[i * n + j]; }
};

/// Metric of the union graph restricted to the given vertices.
MetricMatrix restrict_metric(const Graph& g, const std::vector<Vertex>& vertices);

struct HyperbolicityEstimate {
  double delta = 0.0;
  std::uint64_t samples = 0;
  std::array<std::size_t, 4> witness{};
};

/// Largest four-point defect (S1 - S2) / 2 over all quadruples, where
/// S1 >= S2 >= S3 are the three pairing sums. Ties keep the
/// lexicographically first quadruple.
HyperbolicityEstimate delta_fourpoint_serial(const MetricMatrix& m);
HyperbolicityEstimate delta_fourpoint(const MetricMatrix& m);

/// Exhaustive on graphs with at most exhaustive_limit vertices; otherwise
/// exhaustive over a seeded sample of sample_points vertices.
HyperbolicityEstimate delta_fourpoint(const Graph& g, std::uint64_t seed, std::size_t exhaustive_limit = 200,
                                      std::size_t sample_points = 150);

/// Shortest path from x to y whose label sequence is lexicographically
/// least in the shortlex alphabet.
std::vector<Vertex> geodesic(const CayleyBall& ball, Vertex x, Vertex y);
/// Shortest path in the cusped graph, lowest-id tie-break.
std::vector<Vertex> geodesic(const CuspedBall& ball, Vertex x, Vertex y);

struct TreeApprox {
  std::vector<std::size_t> points;
  /// Tree nodes 0..n-1 are the input points; the rest are branch points.
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<double> lengths;
  double additive_error = 0.0;
  std::size_t basepoint = 0;

  MetricMatrix tree_metric() const;
};

/// Gromov-product linking at each basepoint gives a topology; edge lengths
/// are then fitted to minimise the maximum error. The best basepoint wins.
TreeApprox tree_approx(const MetricMatrix& m, std::size_t max_points = 16);

/// Minimises t subject to |A x - b| <= t componentwise, x >= 0 (dense
/// simplex). Returns x followed by t.
std::vector<double> chebyshev_fit(const std::vector<std::vector<double>>& A, const std::vector<double>& b);

}  // namespace hyparc
