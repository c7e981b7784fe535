#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyparc/boundary.hpp"
#include "hyparc/io.hpp"
#include "hyparc/metric_net.hpp"
#include "hyparc/quasiarc.hpp"

namespace hyparc {

/// Run configuration. Negative radius/depth and non-positive epsilon pick
/// the preset's defaults.
struct Config {
  std::string preset = "f2";
  std::string presentation;  // optional presentation file overriding the preset's group
  int radius = -1;
  int depth = -1;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::size_t budget_vertices = 5'000'000;
};

void to_json(json& j, const Config& c);
void from_json(const json& j, Config& c);

const std::vector<std::string>& preset_names();

struct World {
  Config config;
  std::unique_ptr<Presentation> presentation;
  std::shared_ptr<CuspedBall> ball;
  std::unique_ptr<Net> net;
  std::vector<ObstacleSet> family;
  std::vector<std::string> warnings;
  QuasiArcParams quasi_arc;
  /// Whether the quasi-arc stage loop routes around the family.
  bool avoid_family = true;
  Arc J0;

  const BoundaryNet* boundary() const { return dynamic_cast<const BoundaryNet*>(net.get()); }
  const LatticeNet* lattice() const { return dynamic_cast<const LatticeNet*>(net.get()); }
};

/// Perimeter of each carpet hole as an obstacle with D = side length.
std::vector<ObstacleSet> carpet_family(const LatticeNet& net, const std::vector<Hole>& holes);

World build_world(const Config& config);

}  // namespace hyparc
