#pragma once

#include <vector>

#include "hyparc/boundary.hpp"
#include "hyparc/quasiarc.hpp"

namespace hyparc {

/// Point (z, k) of the cone over an arc: arc position z at level k, which
/// stands for the scale t = exp(-epsilon k step).
struct ConePoint {
  std::size_t z = 0;
  int k = 0;
};

struct Quadrant {
  const Net* net = nullptr;
  Arc arc;
  int levels = 0;
  double step = 1.0;
  double epsilon = 1.0;
  std::vector<ConePoint> points;  // z-major, k ascending

  double scale(int k) const;
  double distance(const ConePoint& a, const ConePoint& b) const;
};

/// Full grid {(z, k) : z on the arc, 0 <= k <= levels}.
Quadrant quadrant_net(const Net& net, const Arc& arc, int levels, double step, double epsilon);

/// Vertex at distance k * step along the witness geodesic of z (the
/// basepoint at level 0).
Vertex ray_map(const BoundaryNet& net, PointId z, int k, double step);

struct Distortion {
  double lambda = 1.0;
  double c = 0.0;
  std::size_t pairs = 0;
  std::size_t a = 0, b = 0;  // worst pair, indices into the point list
};

/// Least lambda such that d/lambda - lambda <= image <= lambda d + lambda
/// over the given pairs (source distance d), with the additive constant
/// tied to the multiplicative one.
double pair_lambda(double source, double image);

struct ConeEmbedding {
  Quadrant quadrant;
  const CuspedBall* host = nullptr;
  std::vector<Vertex> image;     // cusped vertices
  std::vector<Vertex> shadow;    // Cayley vertices
  std::vector<std::int32_t> offset;
  std::int32_t C3 = 0;
  Distortion distortion;
};

ConeEmbedding embed_quadrant(const BoundaryNet& net, const Arc& arc, int levels, double step = 1.0);

/// Pair scan over all cone points (or a seeded sample of max_pairs pairs).
Distortion distortion_audit(const ConeEmbedding& emb, std::size_t max_pairs = 400'000, std::uint64_t seed = 1);
Distortion distortion_audit_serial(const ConeEmbedding& emb, std::size_t max_pairs = 400'000,
                                   std::uint64_t seed = 1);

/// Nearest Cayley vertex of each image (lowest id, hence shortlex least,
/// among the nearest); records the largest offset.
void project_to_cayley(ConeEmbedding& emb, const CuspedBall& ball);

struct TransversalityProfile {
  std::vector<int> M;
  std::vector<double> eta;
  std::vector<std::size_t> worst_fragment;
  double points_diameter = 0.0;
  bool non_transversal = false;  // eta(0) reaches the diameter of the points
};

/// eta(M) = max over coset fragments F of the given subgroups of the
/// diameter of points within M of F, measured in the piece.
TransversalityProfile transversality_audit(const std::vector<Vertex>& points, const CayleyBall& ball,
                                           const std::vector<std::vector<int>>& subsets, const std::vector<int>& Ms);

/// Cayley piece with one hub per coset fragment. Cayley edges have length
/// 1 and spokes length 1/2, so fragment members end up at mutual distance 1.
struct ConedOff {
  const CayleyBall* ball = nullptr;
  std::vector<CosetFragment> fragments;
  Graph graph;
  Vertex hubs_from = 0;

  /// Exact distances from v to every vertex (hubs included).
  std::vector<double> distances_from(Vertex v) const;
};

ConedOff coned_off(const CayleyBall& ball, const std::vector<std::vector<int>>& subsets);

struct ConedOffBall {
  CayleyBall ball;
  ConedOff coned;
};

/// Ball of radius R coned off along the presentation's parabolic subsets.
std::unique_ptr<ConedOffBall> coned_off_ball(const Presentation& p, int R,
                                             std::size_t vertex_budget = 5'000'000);

struct PersistenceReport {
  bool empty = true;
  Distortion distortion;
  double image_diameter = 0.0;
  double source_diameter = 0.0;
  bool collapse = false;
};

/// Quasi-isometry constants of points -> coned-off graph against the given
/// source metric.
PersistenceReport persistence_check(const std::vector<Vertex>& points, const MetricMatrix& source,
                                    const ConedOff& coned);

/// Direction of each witness as seen from the origin of the disk model
/// (surface groups only; empty otherwise).
std::vector<double> witness_angles(const BoundaryNet& net);

/// Net points in angular order over a half turn starting at the smallest
/// angle.
Arc angular_arc(const BoundaryNet& net);

}  // namespace hyparc
