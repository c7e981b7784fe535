#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyparc/cusped.hpp"
#include "hyparc/hypgeom.hpp"
#include "hyparc/metric_net.hpp"

namespace hyparc {

struct NetOptions {
  int T = 4;
  /// Identification margin; negative selects 2 * delta + 1.
  double margin = -1.0;
  /// Hyperbolicity constant; negative estimates it on the host graph.
  double delta = -1.0;
  /// Non-positive epsilon selects min(1, 1 / (4 delta + 1)).
  VisualParams params{0.0, 1.0};
  /// Beyond this many classes a seeded sample is kept (parabolic classes
  /// always survive).
  std::size_t max_points = 4000;
  std::uint64_t seed = 1;
  /// Parabolic ray witnesses only for horoballs with d_O at most this.
  int max_parabolic_distance = 1 << 30;
  double resolution_factor = 2.0;
};

/// Boundary points as depth-T witnesses in a host piece of the cusped space.
/// rho(a, b) = exp(-epsilon (a|b)_w) on witness endpoints.
struct BoundaryNet : DenseNet {
  std::shared_ptr<const CuspedBall> host;
  int T = 0;
  double margin = 0.0;
  double delta = 0.0;
  VisualParams params;
  std::vector<Vertex> witness;              // class representative endpoints
  std::vector<std::size_t> class_size;
  std::vector<std::vector<int>> marks;      // horoballs whose ray lands in the class
  std::vector<double> product;              // Gromov products, n x n
  std::size_t candidates = 0;
  bool sampled = false;
  std::vector<std::string> warnings;

  double gromov(PointId a, PointId b) const { return product[a * n_ + b]; }
  /// Vertex path from the basepoint to the witness endpoint.
  std::vector<Vertex> witness_path(PointId a) const;
};

BoundaryNet make_boundary_net(std::shared_ptr<const CuspedBall> host, std::vector<Vertex> candidates,
                              std::vector<Vertex> priority, const NetOptions& opt);

/// Net over a full cusped ball: one witness per depth-T vertex that extends
/// geodesically by the margin (or reaches the truncation frontier).
BoundaryNet build_net(std::shared_ptr<const CuspedBall> ball, const NetOptions& opt);

/// Genus-2 style net for groups with a surface backend: witnesses are the
/// depth-T prefixes of geodesics toward sampled rays (plus the axes of the
/// hyperbolic subgroups' generators), inside a tube of the given width.
BoundaryNet build_ray_net(const Presentation& p, int rays, int width, NetOptions opt);

enum class ObstacleKind { parabolic, hyperbolic };

struct ObstacleSet {
  std::vector<PointId> members;
  double scale = 1.0;      // D(V) = exp(-epsilon d_H)
  ObstacleKind kind = ObstacleKind::parabolic;
  int origin = 0;          // horoball id or fragment id
  std::int32_t d_H = 0;
};

struct ObstacleFamily {
  std::vector<ObstacleSet> sets;
  double L = 0.0;
  double N = 0.0;
  std::vector<std::string> warnings;
};

/// Parabolic points of the marked horoballs and limit sets of hyperbolic
/// subgroup cosets. track_radius < 0 selects max(1, 2 delta).
ObstacleFamily limit_sets(const BoundaryNet& net, double track_radius = -1.0);

}  // namespace hyparc
