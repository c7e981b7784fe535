#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyparc/boundary.hpp"
#include "hyparc/quasiarc.hpp"

namespace hyparc {

struct SeparationReport {
  bool empty = true;
  /// min over distinct pairs of rho(V, V') exp(epsilon max(d_H, d_H')).
  double inv_C = 0.0;
  /// min relative distance rho(V, V') / min(D(V), D(V')) and its inverse.
  double min_relative = 0.0;
  double L_hat = 0.0;
  std::size_t a = 0, b = 0;
  std::size_t pairs = 0;
};

SeparationReport separation_audit(const std::vector<ObstacleSet>& family, const Net& net, double epsilon);

struct DoublingReport {
  std::size_t N = 0;
  PointId center = 0;
  double radius = 0.0;
  std::size_t samples = 0;
  bool exhaustive = true;
};

/// Greedy covers of B(c, r) by balls of radius r/2. Every center and up to
/// max_radii distinct radii per center when the net has at most
/// exhaustive_limit points; otherwise a seeded sample of centers.
DoublingReport doubling_estimate(const Net& net, std::uint64_t seed = 1, std::size_t exhaustive_limit = 2000,
                                 std::size_t max_radii = 32, std::size_t sample_centers = 256);

struct LinConnReport {
  double L = 0.0;
  double h = 0.0;
  bool disconnected = false;
  std::size_t components = 0;
  std::vector<double> component_L;
  std::size_t pairs = 0;
  PointId a = 0, b = 0;
};

/// For each tested pair, the diameter of the minimax chain (steps at most h)
/// divided by the distance of the pair.
LinConnReport linconn_estimate(const Net& net, std::uint64_t seed = 1, std::size_t max_pairs = 2000);

struct Chain {
  std::vector<PointId> points;
  double max_gap = 0.0;
  double K1 = 0.0;  // diam(chain) / rho(a, b)
  /// No chain with gaps of at most rho(a,b)/2 exists at this resolution;
  /// points is then (a, b).
  bool resolution_limited = false;
};

Chain chain(const Net& net, PointId a, PointId b);

struct PorosityEntry {
  std::size_t set = 0;
  double r = 0.0;
  double constant = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct PorosityReport {
  std::vector<PorosityEntry> entries;
  double worst = 0.0;
  bool pass = true;
};

/// For each set and scale r <= D(V): max over a in V of r / max_{b in B(a,r)}
/// rho(b, V). Sets larger than max_members are scanned at an even stride.
PorosityReport porosity_audit(const std::vector<ObstacleSet>& family, const Net& net,
                              const std::vector<double>& scales, double L, std::size_t max_members = 64);

struct AvoidabilityReport {
  bool skipped = false;
  std::string note;
  std::size_t arcs = 0;
  std::size_t passed = 0;
  bool pass = false;
  double worst_follow = 0.0;
  Arc witness;
};

/// Tests chords and seeded random paths through N(V, 2r) between points of
/// A(V, r, 2r) for detours in A(V, r/L, 2rL) that 4rL-follow them.
AvoidabilityReport avoidability_audit(const ObstacleSet& V, const Net& net, double r, double L,
                                      std::uint64_t seed = 1, std::size_t random_arcs = 8);

struct RescaleReport {
  bool fallback = false;
  bool orbit_gap = false;
  double target_depth = 0.0;  // -(1/eps) ln(2 r C0) - delta - 1
  std::int32_t gap = 0;       // distance from y to the orbit
  GroupWord g;
  double L0 = 1.0;
  std::size_t pairs = 0;
  std::size_t skipped = 0;
  std::string note;
};

/// Moves the point y on the witness geodesic of z at the target depth back
/// to the basepoint and measures how far a -> g a is from a similarity with
/// ratio 1/r on B(z, r).
RescaleReport rescale_audit(const BoundaryNet& net, PointId z, double r, double D);

}  // namespace hyparc
