#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hyparc/audits.hpp"
#include "hyparc/embed.hpp"
#include "hyparc/error.hpp"
#include "hyparc/io.hpp"
#include "hyparc/presets.hpp"

using namespace hyparc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string note;
};

std::string summary_text(const json& report) {
  std::string out;
  for (auto& [k, v] : report.items())
    if (!v.is_array() && !v.is_object()) out += k + ": " + v.dump() + "\n";
  return out;
}

void emit(const fs::path& dir, const std::string& stem, const json& report, std::vector<std::string>& files) {
  write_text(dir / (stem + ".json"), report.dump(2) + "\n");
  write_text(dir / (stem + ".txt"), summary_text(report));
  files.push_back(stem + ".json");
  files.push_back(stem + ".txt");
}

const BoundaryNet& need_boundary(const World& w, const std::string& what) {
  if (!w.boundary()) throw usage_error(what + " needs a group preset");
  return *w.boundary();
}

Config fresh_config(const fs::path& dir) {
  if (!fs::exists(dir / "manifest.json")) throw usage_error("no artifacts in " + dir.string() + "; run build first");
  auto m = read_manifest(dir);
  auto stale = stale_files(dir, m);
  if (!stale.empty()) throw contract_error("stale artifact (hash mismatch): " + stale.front());
  return m.config.get<Config>();
}

Outcome cmd_build(const Config& c, const fs::path& dir) {
  World w = build_world(c);
  std::vector<std::string> files;
  if (w.ball && w.ball->size() <= static_cast<Vertex>(c.budget_vertices)) {
    write_jsonl(dir / "ball.jsonl", ball_records(*w.ball));
    files.push_back("ball.jsonl");
  }
  if (w.net->count() <= c.budget_vertices) {
    write_jsonl(dir / "net.jsonl", net_records(*w.net));
    files.push_back("net.jsonl");
  } else {
    w.warnings.push_back("net larger than the vertex budget; net.jsonl not written");
  }
  write_jsonl(dir / "family.jsonl", family_records(w.family));
  files.push_back("family.jsonl");
  json summary = {{"preset", c.preset},
                  {"points", w.net->count()},
                  {"resolution", w.net->resolution()},
                  {"diameter", w.net->diameter()},
                  {"obstacles", w.family.size()},
                  {"warnings", w.warnings}};
  if (w.ball) summary["host_vertices"] = w.ball->size();
  if (auto* b = w.boundary()) {
    summary["T"] = b->T;
    summary["delta"] = b->delta;
    summary["margin"] = b->margin;
    summary["epsilon"] = b->params.epsilon;
  }
  emit(dir, "build", summary, files);
  write_manifest(dir, "build", c, files);
  std::cout << summary_text(summary);
  return {};
}

Outcome cmd_audit(const std::string& which, const fs::path& dir) {
  Config c = fresh_config(dir);
  World w = build_world(c);
  const Net& net = *w.net;
  json report;
  bool pass = true;
  std::string note;
  if (which == "separation") {
    double eps = w.boundary() ? w.boundary()->params.epsilon : 0.0;
    auto r = separation_audit(w.family, net, eps);
    report = r;
    pass = r.empty || r.inv_C > 0;
  } else if (which == "doubling" || which == "linconn") {
    // Pair and cover scans are quadratic; very fine carpets are measured
    // on the coarsest net with the same hole pattern.
    World coarse;
    const Net* target = &net;
    if (c.preset == "carpet" && net.count() > 250'000) {
      Config cc = c;
      cc.radius = c.depth > 0 ? c.depth : 4;
      coarse = build_world(cc);
      target = coarse.net.get();
      note = "measured on the carpet net with exponent " + std::to_string(cc.radius);
    }
    if (which == "doubling") {
      report = doubling_estimate(*target, c.seed);
    } else {
      auto r = linconn_estimate(*target, c.seed);
      report = r;
      if (r.disconnected)
        note += (note.empty() ? "" : "; ") + std::string("net is disconnected at its resolution (") +
                std::to_string(r.components) + " components)";
    }
  } else if (which == "porosity") {
    double top = 0.0;
    for (const auto& V : w.family) top = std::max(top, V.scale);
    std::vector<double> scales;
    for (int k = 1; k <= 4; ++k)
      if (top / std::ldexp(1.0, k) >= net.resolution()) scales.push_back(top / std::ldexp(1.0, k));
    auto r = porosity_audit(w.family, net, scales, 4.0);
    report = r;
    pass = std::isfinite(r.worst);
    if (scales.empty()) note = "no obstacle scale above the net resolution";
  } else if (which == "avoidability") {
    const double L = 2.0;
    json entries = json::array();
    std::size_t tested = 0;
    std::vector<std::size_t> order(w.family.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return w.family[x].scale < w.family[y].scale; });
    for (std::size_t i : order) {
      if (tested == 16) break;
      const auto& V = w.family[i];
      const double r = V.scale / (4 * L);
      if (r < net.resolution()) continue;
      auto a = avoidability_audit(V, net, r, L, c.seed);
      if (a.skipped || a.arcs == 0) continue;
      ++tested;
      json e = a;
      e["set"] = i;
      e["r"] = r;
      entries.push_back(e);
      pass = pass && a.pass;
    }
    report = {{"anchor", "avoidability"}, {"L", L}, {"tested", tested}, {"entries", entries}, {"pass", pass}};
    if (!tested) note = "no obstacle scale above the net resolution";
  } else if (which == "rescale") {
    const auto& b = need_boundary(w, "rescale");
    json entries = json::array();
    double worst = 1.0;
    for (PointId z = 0; z < std::min<std::size_t>(8, b.size()); ++z) {
      auto r = rescale_audit(b, z, 2 * b.resolution(), 4.0);
      worst = std::max(worst, r.L0);
      json e = r;
      e["z"] = z;
      entries.push_back(e);
    }
    report = {{"anchor", "rescaling by group elements"}, {"L0", worst}, {"entries", entries}};
  } else if (which == "busemann") {
    if (!w.ball || w.ball->horoballs.empty()) throw usage_error("busemann needs a preset with horoballs");
    json entries = json::array();
    std::int32_t worst = 0;
    for (int h = 0; h < static_cast<int>(std::min<std::size_t>(8, w.ball->horoballs.size())); ++h) {
      auto r = busemann_sandwich(*w.ball, h, w.ball->horoballs[static_cast<std::size_t>(h)].depth);
      worst = std::max(worst, r.c_hat);
      entries.push_back(r);
    }
    report = {{"anchor", "horoball sandwich"}, {"c_hat", worst}, {"entries", entries}};
  } else {
    throw usage_error("unknown audit '" + which + "'");
  }
  report["pass"] = pass;
  if (!note.empty()) report["note"] = note;
  std::vector<std::string> files;
  emit(dir, "audit_" + which, report, files);
  write_manifest(dir, "audit", c, files);
  std::cout << summary_text(report);
  if (!pass) return {3, which + " audit failed"};
  return {0, note};
}

QuasiArcResult run_quasi_arc(const World& w) {
  static const std::vector<ObstacleSet> none;
  return build_quasi_arc(*w.net, w.avoid_family ? w.family : none, w.quasi_arc, w.J0);
}

Outcome cmd_quasiarc(const Config& c, const fs::path& dir) {
  World w = build_world(c);
  auto res = run_quasi_arc(w);
  std::vector<std::string> files{"arc.jsonl", "stages.jsonl", "clearance.csv"};
  write_jsonl(dir / "arc.jsonl", arc_records(*w.net, res.arc));
  write_jsonl(dir / "stages.jsonl", stage_records(res.report));
  write_text(dir / "clearance.csv", clearance_csv(w.avoid_family ? w.family : std::vector<ObstacleSet>{}, res.report));
  json report = res.report;
  report["points"] = res.arc.size();
  emit(dir, "quasiarc", report, files);
  write_manifest(dir, "quasiarc", c, files);
  std::cout << summary_text(report);
  if (res.report.pass) return {};
  if (res.report.stage0_terminated)
    return {0, "obstacle scale below resolution: stage-0 termination, the initial arc is returned"};
  std::string failing;
  for (const auto& s : res.report.stages) failing = json(s).dump();
  return {3, "quasi-arc failed: " + (res.report.failure.empty() ? std::string("acceptance checks") : res.report.failure) +
                 "\nlast stage: " + failing};
}

Outcome cmd_embed(const Config& c, const fs::path& dir) {
  World w = build_world(c);
  const auto& b = need_boundary(w, "embed");
  auto res = run_quasi_arc(w);
  auto emb = embed_quadrant(b, res.arc, b.T, 1.0);
  std::vector<std::vector<int>> subsets = w.presentation->parabolic;
  subsets.insert(subsets.end(), w.presentation->hyperbolic.begin(), w.presentation->hyperbolic.end());
  auto prof = transversality_audit(emb.shadow, b.host->cayley, subsets, {0, 1, 2, 4});
  auto coned = coned_off(b.host->cayley, subsets);
  MetricMatrix src;
  src.n = emb.shadow.size();
  src.d.resize(src.n * src.n);
  for (std::size_t i = 0; i < src.n; ++i)
    for (std::size_t j = 0; j < src.n; ++j)
      src.d[i * src.n + j] = emb.quadrant.distance(emb.quadrant.points[i], emb.quadrant.points[j]);
  auto per = persistence_check(emb.shadow, src, coned);

  std::vector<std::string> files{"embedding.jsonl", "profile.csv", "arc.jsonl"};
  write_jsonl(dir / "embedding.jsonl", embedding_records(emb));
  write_jsonl(dir / "arc.jsonl", arc_records(b, res.arc));
  write_text(dir / "profile.csv", profile_csv(prof));
  json report = {{"anchor", "cone embedding"},
                 {"quasi_arc", res.report},
                 {"cone_points", emb.image.size()},
                 {"distortion", emb.distortion},
                 {"C3", emb.C3},
                 {"transversality", prof},
                 {"persistence", per}};
  report["lambda_hat"] = emb.distortion.lambda;
  report["c_hat"] = emb.distortion.c;
  report["lambda_prime"] = per.distortion.lambda;
  emit(dir, "embed", report, files);
  write_manifest(dir, "embed", c, files);
  std::cout << summary_text(report);
  return {};
}

Outcome cmd_verify(const fs::path& artifact) {
  fs::path dir = fs::is_directory(artifact) ? artifact : artifact.parent_path();
  if (dir.empty()) dir = ".";
  Config c = fresh_config(dir);
  std::cout << "manifest hashes: ok\n";
  if (fs::exists(dir / "arc.jsonl") && fs::exists(dir / "quasiarc.json")) {
    World w = build_world(c);
    Arc arc;
    for (const auto& r : read_jsonl(dir / "arc.jsonl")) arc.push_back(r.at("point").get<PointId>());
    auto report = json::parse(std::ifstream(dir / "quasiarc.json"));
    double lambda = report.at("lambda_arc").is_number() ? report.at("lambda_arc").get<double>() : INFINITY;
    auto v = verify_quasi_arc(*w.net, arc, lambda * (1 + 1e-9));
    std::cout << "arc: " << json(v).dump() << "\n";
    if (!v.pass) return {3, "arc does not verify at the recorded lambda"};
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyparc: boundary nets, quasi-arcs and cone embeddings for cusped spaces"};
  app.require_subcommand(1);
  Config c;
  std::string out;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", c.preset, "f2 | z2z2 | genus2 | carpet | square")
        ->check(CLI::IsMember(preset_names()));
    sub->add_option("--presentation", c.presentation, "presentation file replacing the preset's group");
    sub->add_option("--radius", c.radius, "ball radius (rays for genus2, exponent for carpet, side for square)");
    sub->add_option("--depth", c.depth, "boundary depth T (levels for carpet)");
    sub->add_option("--epsilon", c.epsilon, "visual parameter");
    sub->add_option("--seed", c.seed, "seed for every sampled choice");
    sub->add_option("--threads", c.threads, "OpenMP threads (0 keeps the default)");
    sub->add_option("--budget-vertices", c.budget_vertices, "vertex budget for balls");
    sub->add_option("--out", out, "artifact directory (default out/<preset>)");
  };
  auto* build = app.add_subcommand("build", "build ball and boundary net artifacts");
  auto* audit = app.add_subcommand("audit", "run an audit on built artifacts");
  std::string which;
  audit->add_option("which", which, "separation|doubling|linconn|porosity|avoidability|rescale|busemann")
      ->required()
      ->check(CLI::IsMember({"separation", "doubling", "linconn", "porosity", "avoidability", "rescale", "busemann"}));
  auto* quasiarc = app.add_subcommand("quasiarc", "build the obstacle-avoiding quasi-arc");
  auto* embed = app.add_subcommand("embed", "cone embedding with transversality and persistence reports");
  auto* verify = app.add_subcommand("verify", "check artifact hashes and re-verify a stored arc");
  std::string artifact;
  verify->add_option("artifact", artifact, "artifact directory or file")->required();
  for (auto* sub : {build, audit, quasiarc, embed, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (c.threads > 0) omp_set_num_threads(c.threads);
  const fs::path dir = out.empty() ? fs::path("out") / c.preset : fs::path(out);
  try {
    Outcome r;
    if (*build) r = cmd_build(c, dir);
    else if (*audit) r = cmd_audit(which, dir);
    else if (*quasiarc) r = cmd_quasiarc(c, dir);
    else if (*embed) r = cmd_embed(c, dir);
    else r = cmd_verify(artifact);
    if (!r.note.empty()) (r.code ? std::cerr : std::cout) << "note: " << r.note << "\n";
    return r.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::usage: return 1;
      case ErrorKind::budget: return 2;
      case ErrorKind::contract: return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
