#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hyparc/boundary.hpp"
#include "hyparc/metric_net.hpp"

namespace hyparc {

/// Ordered sequence of distinct net points.
using Arc = std::vector<PointId>;

/// Whenever a point repeats, the stretch between its visits is removed.
Arc cut_loops(const Arc& arc);
bool is_simple(const Arc& arc);
double arc_diameter(const Net& net, const Arc& arc);

struct FollowResult {
  bool follows = true;
  /// Index into B of the first point with no admissible image.
  std::size_t witness = 0;
};

/// Whether B iota-follows A through a monotone, endpoint-preserving
/// assignment p with rho(b_k, a_p(k)) <= iota. Greedy earliest choice.
FollowResult follows_check(const Net& net, const Arc& B, const Arc& A, double iota);
/// Smallest iota for which follows_check succeeds.
double follow_distance(const Net& net, const Arc& B, const Arc& A);

/// Breadth-first search over the net's adjacency with reusable scratch.
class PathSearch {
 public:
  explicit PathSearch(const Net& net);
  /// Fewest-step path from -> to through points accepted by allowed (the
  /// endpoints must be accepted too); empty if none within the visit budget.
  Arc find(PointId from, PointId to, const std::function<bool(PointId)>& allowed,
           std::size_t budget = std::numeric_limits<std::size_t>::max());
  std::size_t last_visited() const { return visited_; }

 private:
  const Net& net_;
  std::vector<std::uint32_t> stamp_;
  std::vector<PointId> parent_;
  std::uint32_t gen_ = 0;
  std::size_t visited_ = 0;
};

struct LocalStructure {
  bool holds = true;
  /// max diam(J[x,y]) / iota over pairs with rho(x,y) < s iota.
  double measured_S = 0.0;
  std::size_t i = 0, j = 0;  // worst pair
};

/// Exhaustive check of rho(x,y) < s iota  =>  diam(J[x,y]) < S iota.
LocalStructure local_structure(const Net& net, const Arc& arc, double iota, double s, double S);
LocalStructure local_structure_serial(const Net& net, const Arc& arc, double iota, double s, double S);

struct StraightenReport {
  double iota = 0.0;
  double s = 0.5, S = 4.0;
  double measured_S = 0.0;
  double follow = 0.0;      // measured follow distance to the input
  std::size_t shortcuts = 0;
  std::size_t repairs = 0;
  bool ok = true;
  std::string note;
};

/// Greedy shortcutting to the furthest later point within iota/4, bridged
/// by short net paths, then repair of any pair breaking the (s,S) property.
Arc straighten(const Net& net, const Arc& arc, double iota, StraightenReport* report = nullptr, double s = 0.5,
               double S = 4.0, PathSearch* search = nullptr);

/// Filtration classes: n >= 1 with r^n < D(V)/D0 <= r^(n-1).
std::vector<int> scale_filtration(const std::vector<ObstacleSet>& family, double r, double D0);

struct QuasiArcParams {
  double r = 0.1;
  double L = 10.0;
  double N = 0.0;
  double s = 0.5, S = 4.0;
  /// Non-positive selects sup D(V), or diam(Z) for an empty family.
  double D0 = 0.0;
  int max_stages = 40;
};

/// Whether the parameters meet the constraints used in the existence proof.
bool proof_regime(const QuasiArcParams& p, std::string* why = nullptr);

struct DetourReport {
  std::size_t crossings = 0;
  double follow = 0.0;  // measured follow distance of the output to the input
  bool ok = true;
  std::string failure;
};

/// Reroutes every passage of the arc through N(V, r'/L^2) inside the
/// annulus A(V, r'/L^2, 4r') near the passage, avoiding the blocked set.
Arc detour(const Net& net, const Arc& arc, const ObstacleSet& V, double r_prime, const QuasiArcParams& params,
           PathSearch& search, const std::function<bool(PointId)>& blocked, DetourReport* report = nullptr);

struct StageLog {
  int n = 0;
  double r_prime = 0.0;
  double iota = 0.0;
  std::size_t obstacles = 0;
  std::size_t pushed = 0;
  std::size_t crossings = 0;
  double follow_prev = 0.0;   // measured follow distance to the previous arc
  double follow_bound = 0.0;  // D0 r^n / (4L)
  double measured_S = 0.0;
  std::size_t points = 0;
  bool disjoint = true;
  std::string note;
};

struct QuasiArcReport {
  bool pass = false;
  bool proof_regime = false;
  std::string regime_note;
  double lambda_arc = 0.0;        // global max diam(subarc) / rho
  double lambda_local = 0.0;      // same, restricted to the local window
  double window = 0.0;
  double lambda_clearance = 0.0;  // max D(V) / clearance
  double lambda_hat = 0.0;
  double diam_ratio = 0.0;        // diam(arc) / diam(Z)
  double diam_floor = 0.0;        // 1/2 - h / diam(Z)
  double drift_total = 0.0;
  double drift_limit = 0.0;       // diam(Z) / 4
  double persistence_worst = 0.0; // min over stages of clearance / (D0 r^m / (64 L^4))
  std::vector<double> clearance;
  std::vector<int> stage_of;
  std::vector<StageLog> stages;
  /// The first stage scale is already below the net resolution.
  bool stage0_terminated = false;
  std::string failure;
};

struct QuasiArcResult {
  Arc arc;
  QuasiArcReport report;
};

/// Stage loop of the obstacle-avoiding construction. J0 defaults to a
/// fewest-step path between a diametral pair.
QuasiArcResult build_quasi_arc(const Net& net, const std::vector<ObstacleSet>& family, const QuasiArcParams& params,
                               Arc J0 = {});

struct ArcVerification {
  bool pass = true;
  double lambda = 0.0;  // max diam(subarc) / rho over pairs inside the window
  std::size_t i = 0, j = 0;
  bool simple = true;
};

/// diam(arc[x,y]) <= lambda rho(x,y) for all pairs with rho(x,y) <= window.
ArcVerification verify_quasi_arc(const Net& net, const Arc& arc, double lambda,
                                 double window = std::numeric_limits<double>::infinity());
ArcVerification verify_quasi_arc_serial(const Net& net, const Arc& arc, double lambda,
                                        double window = std::numeric_limits<double>::infinity());

}  // namespace hyparc
