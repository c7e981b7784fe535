#include "hyparc/presets.hpp"

#include <algorithm>

#include "hyparc/embed.hpp"
#include "hyparc/error.hpp"

namespace hyparc {

void to_json(json& j, const Config& c) {
  j = {{"preset", c.preset}, {"presentation", c.presentation}, {"radius", c.radius},
       {"depth", c.depth},   {"epsilon", c.epsilon},           {"seed", c.seed},
       {"threads", c.threads}, {"budget_vertices", c.budget_vertices}};
}

void from_json(const json& j, Config& c) {
  Config d;
  c.preset = j.value("preset", d.preset);
  c.presentation = j.value("presentation", d.presentation);
  c.radius = j.value("radius", d.radius);
  c.depth = j.value("depth", d.depth);
  c.epsilon = j.value("epsilon", d.epsilon);
  c.seed = j.value("seed", d.seed);
  c.threads = j.value("threads", d.threads);
  c.budget_vertices = j.value("budget_vertices", d.budget_vertices);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"f2", "z2z2", "genus2", "carpet", "square"};
  return names;
}

std::vector<ObstacleSet> carpet_family(const LatticeNet& net, const std::vector<Hole>& holes) {
  std::vector<ObstacleSet> out;
  for (const auto& h : holes) {
    ObstacleSet V;
    V.scale = static_cast<double>(h.x1 - h.x0) * net.spacing();
    V.origin = h.level;
    for (long i = h.x0; i <= h.x1; ++i) {
      V.members.push_back(net.id(i, h.y0));
      V.members.push_back(net.id(i, h.y1));
    }
    for (long j = h.y0 + 1; j < h.y1; ++j) {
      V.members.push_back(net.id(h.x0, j));
      V.members.push_back(net.id(h.x1, j));
    }
    std::sort(V.members.begin(), V.members.end());
    out.push_back(std::move(V));
  }
  return out;
}

namespace {

Presentation group_for(const Config& c, const char* fallback) {
  return c.presentation.empty() ? parse_presentation(fallback) : load_presentation(c.presentation);
}

void boundary_world(World& w, const char* group, int R, int T, NetOptions opt) {
  const Config& c = w.config;
  w.presentation = std::make_unique<Presentation>(group_for(c, group));
  opt.T = c.depth > 0 ? c.depth : T;
  opt.seed = c.seed;
  if (c.epsilon > 0) opt.params.epsilon = c.epsilon;
  const int radius = c.radius > 0 ? c.radius : R;
  w.ball = std::make_shared<CuspedBall>(cusped_ball(*w.presentation, radius, -1, c.budget_vertices));
  auto net = std::make_unique<BoundaryNet>(build_net(w.ball, opt));
  auto fam = limit_sets(*net);
  w.family = std::move(fam.sets);
  w.warnings = net->warnings;
  w.warnings.insert(w.warnings.end(), fam.warnings.begin(), fam.warnings.end());
  w.net = std::move(net);
}

}  // namespace

World build_world(const Config& config) {
  World w;
  w.config = config;
  const std::string& name = config.preset;
  if (name == "f2") {
    boundary_world(w, "gens a b; rels;", 6, 4, {});
  } else if (name == "z2z2") {
    NetOptions opt;
    opt.delta = 2;
    opt.margin = 1;
    opt.max_parabolic_distance = 3;
    opt.max_points = 2000;
    boundary_world(w, "gens a b c d; rels [a,b],[c,d]; parabolic a b; parabolic c d", 6, 4, opt);
  } else if (name == "genus2") {
    w.presentation = std::make_unique<Presentation>(group_for(config, "gens a b c d; rels [a,b][c,d]; hypsub a"));
    NetOptions opt;
    opt.T = config.depth > 0 ? config.depth : 8;
    opt.seed = config.seed;
    if (config.epsilon > 0) opt.params.epsilon = config.epsilon;
    const int rays = config.radius > 0 ? config.radius : 64;
    auto net = std::make_unique<BoundaryNet>(build_ray_net(*w.presentation, rays, 2, opt));
    w.ball = std::const_pointer_cast<CuspedBall>(net->host);
    auto fam = limit_sets(*net);
    w.family = std::move(fam.sets);
    w.warnings = net->warnings;
    w.warnings.insert(w.warnings.end(), fam.warnings.begin(), fam.warnings.end());
    w.J0 = angular_arc(*net);
    w.avoid_family = false;
    w.warnings.push_back("limit sets lie below the net resolution; the quasi-arc is built with the empty family");
    w.quasi_arc.r = 0.5;
    w.quasi_arc.L = 1;
    w.quasi_arc.D0 = 1;
    w.net = std::move(net);
  } else if (name == "carpet") {
    const int levels = config.depth > 0 ? config.depth : 4;
    const int exponent = config.radius > 0 ? config.radius : 8;
    auto net = std::make_unique<LatticeNet>(carpet_net(levels, exponent));
    w.family = carpet_family(*net, carpet_holes(levels, exponent));
    PathSearch search(*net);
    w.J0 = search.find(net->id(0, 0), net->id(net->side(), net->side()), [](PointId) { return true; });
    w.quasi_arc.r = 0.33;
    w.quasi_arc.L = 1;
    w.quasi_arc.D0 = 1.0 / 3;
    w.net = std::move(net);
  } else if (name == "square") {
    const int k = config.radius > 0 ? config.radius : 64;
    auto net = std::make_unique<LatticeNet>(grid_net(k));
    const long N = net->side(), lo = 3 * N / 8, hi = N - lo;
    ObstacleSet V;
    for (long j = lo; j <= hi; ++j)
      for (long i = lo; i <= hi; ++i) V.members.push_back(net->id(i, j));
    V.scale = static_cast<double>(hi - lo) * net->spacing();
    w.family = {V};
    w.quasi_arc.r = 0.33;
    w.quasi_arc.L = 1;
    w.quasi_arc.D0 = w.family.front().scale;
    w.net = std::move(net);
  } else {
    throw usage_error("unknown preset '" + name + "'");
  }
  return w;
}

}  // namespace hyparc
