#include "hyparc/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "hyparc/error.hpp"

namespace hyparc {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw contract_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string file_sha256(const fs::path& path) { return sha256_hex(slurp(path)); }

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw usage_error("cannot write " + path.string());
  out << text;
}

void write_jsonl(const fs::path& path, const std::vector<json>& records) {
  std::string text;
  for (const auto& r : records) {
    text += r.dump();
    text += '\n';
  }
  write_text(path, text);
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::istringstream in(slurp(path));
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) {
      try {
        out.push_back(json::parse(line));
      } catch (const json::exception& e) {
        throw usage_error(path.string() + ": " + e.what());
      }
    }
  return out;
}

void write_manifest(const fs::path& dir, const std::string& command, const json& config,
                    const std::vector<std::string>& files) {
  json m = {{"command", command}, {"config", config}, {"files", json::object()}};
  if (fs::exists(dir / "manifest.json")) {
    auto old = read_manifest(dir);
    for (const auto& [name, hash] : old.files) m["files"][name] = hash;
    if (!old.command.empty()) m["command"] = old.command;
    if (old.config != config) m["config"] = config;
  }
  for (const auto& f : files) m["files"][f] = file_sha256(dir / f);
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

Manifest read_manifest(const fs::path& dir) {
  const fs::path path = fs::is_directory(dir) ? dir / "manifest.json" : dir;
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw usage_error(path.string() + ": " + e.what());
  }
  Manifest m;
  m.command = j.value("command", "");
  m.config = j.value("config", json::object());
  const json files = j.value("files", json::object());
  for (auto& [name, hash] : files.items()) m.files[name] = hash.get<std::string>();
  return m;
}

std::vector<std::string> stale_files(const fs::path& dir, const Manifest& m) {
  std::vector<std::string> out;
  for (const auto& [name, hash] : m.files)
    if (!fs::exists(dir / name) || file_sha256(dir / name) != hash) out.push_back(name);
  return out;
}

std::vector<json> ball_records(const CuspedBall& ball) {
  std::vector<json> out;
  out.reserve(static_cast<std::size_t>(ball.size()));
  const Presentation* p = ball.presentation;
  for (Vertex v = 0; v < ball.size(); ++v) {
    if (ball.is_cayley(v)) {
      json r = {{"v", v}, {"depth", ball.cayley.depth[static_cast<std::size_t>(v)]}};
      if (p) r["word"] = p->format(ball.cayley.word(v));
      out.push_back(std::move(r));
    } else {
      auto c = ball.point(v);
      out.push_back({{"v", v}, {"horoball", c.horoball}, {"base", c.cayley}, {"level", c.level}});
    }
  }
  return out;
}

std::vector<json> net_records(const Net& net) {
  std::vector<json> out;
  const auto* bn = dynamic_cast<const BoundaryNet*>(&net);
  const auto* ln = dynamic_cast<const LatticeNet*>(&net);
  for (PointId a : net.points()) {
    json r = {{"id", a}};
    if (bn) {
      r["witness"] = bn->witness[a];
      r["class_size"] = bn->class_size[a];
      r["marks"] = bn->marks[a];
    }
    if (ln) {
      r["x"] = ln->x(a);
      r["y"] = ln->y(a);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<json> family_records(const std::vector<ObstacleSet>& family) {
  std::vector<json> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& V = family[i];
    out.push_back({{"set", i},
                   {"kind", V.kind == ObstacleKind::parabolic ? "parabolic" : "hyperbolic"},
                   {"origin", V.origin},
                   {"d_H", V.d_H},
                   {"scale", V.scale},
                   {"members", V.members}});
  }
  return out;
}

std::vector<json> arc_records(const Net& net, const Arc& arc) {
  std::vector<json> out;
  double along = 0.0;
  for (std::size_t i = 0; i < arc.size(); ++i) {
    if (i) along += net.dist(arc[i - 1], arc[i]);
    out.push_back({{"index", i}, {"point", arc[i]}, {"chordal_length", along}});
  }
  return out;
}

std::vector<json> stage_records(const QuasiArcReport& report) {
  std::vector<json> out;
  for (const auto& s : report.stages) out.push_back(s);
  return out;
}

std::vector<json> embedding_records(const ConeEmbedding& emb) {
  std::vector<json> out;
  for (std::size_t i = 0; i < emb.image.size(); ++i) {
    const auto& c = emb.quadrant.points[i];
    out.push_back({{"cone", {emb.quadrant.arc[c.z], c.k}},
                   {"image_vertex", emb.image[i]},
                   {"cayley_vertex", emb.shadow.empty() ? -1 : emb.shadow[i]},
                   {"offsets", emb.offset.empty() ? 0 : emb.offset[i]}});
  }
  return out;
}

std::string profile_csv(const TransversalityProfile& profile) {
  std::ostringstream s;
  s << "M,eta\n";
  for (std::size_t i = 0; i < profile.M.size(); ++i) s << profile.M[i] << ',' << profile.eta[i] << '\n';
  return s.str();
}

std::string clearance_csv(const std::vector<ObstacleSet>& family, const QuasiArcReport& report) {
  std::ostringstream s;
  s << "set,scale,stage,clearance\n";
  for (std::size_t i = 0; i < family.size() && i < report.clearance.size(); ++i)
    s << i << ',' << family[i].scale << ',' << (i < report.stage_of.size() ? report.stage_of[i] : -1) << ','
      << report.clearance[i] << '\n';
  return s.str();
}

void to_json(json& j, const SeparationReport& r) {
  j = {{"anchor", "separation of limit sets"}, {"empty", r.empty},  {"inv_C", r.inv_C},
       {"min_relative", r.min_relative},       {"L_hat", r.L_hat},  {"worst", {r.a, r.b}},
       {"pairs", r.pairs}};
}

void to_json(json& j, const DoublingReport& r) {
  j = {{"anchor", "doubling"}, {"N", r.N},           {"center", r.center},
       {"radius", r.radius},   {"samples", r.samples}, {"exhaustive", r.exhaustive}};
}

void to_json(json& j, const LinConnReport& r) {
  j = {{"anchor", "linear connectedness"},
       {"L", r.L},
       {"h", r.h},
       {"disconnected", r.disconnected},
       {"components", r.components},
       {"component_L", r.component_L},
       {"pairs", r.pairs},
       {"worst", {r.a, r.b}}};
}

void to_json(json& j, const PorosityReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"set", e.set}, {"r", e.r}, {"constant", e.constant}, {"pass", e.pass},
                       {"skipped", e.skipped}, {"note", e.note}});
  j = {{"anchor", "porosity"}, {"worst", r.worst}, {"pass", r.pass}, {"entries", entries}};
}

void to_json(json& j, const AvoidabilityReport& r) {
  j = {{"anchor", "avoidability"}, {"skipped", r.skipped}, {"note", r.note},
       {"arcs", r.arcs},           {"passed", r.passed},   {"pass", r.pass},
       {"worst_follow", r.worst_follow}, {"witness", r.witness}};
}

void to_json(json& j, const RescaleReport& r) {
  std::vector<int> g(r.g.letters.begin(), r.g.letters.end());
  j = {{"anchor", "rescaling by group elements"},
       {"fallback", r.fallback},
       {"orbit_gap", r.orbit_gap},
       {"target_depth", r.target_depth},
       {"gap", r.gap},
       {"g", g},
       {"L0", r.L0},
       {"pairs", r.pairs},
       {"skipped", r.skipped},
       {"note", r.note}};
}

void to_json(json& j, const SandwichReport& r) {
  j = {{"anchor", "horoball sandwich"}, {"horoball", r.horoball}, {"T", r.T},
       {"d_O", r.d_O},                  {"c_inside", r.c_inside}, {"c_outside", r.c_outside},
       {"c_hat", r.c_hat},              {"scanned", r.scanned},   {"monotone_in_T", r.monotone_in_T}};
}

void to_json(json& j, const StageLog& s) {
  j = {{"n", s.n},
       {"r_prime", s.r_prime},
       {"iota", s.iota},
       {"obstacles", s.obstacles},
       {"pushed", s.pushed},
       {"crossings", s.crossings},
       {"follow_prev", s.follow_prev},
       {"follow_bound", s.follow_bound},
       {"measured_S", s.measured_S},
       {"points", s.points},
       {"disjoint", s.disjoint},
       {"note", s.note}};
}

void to_json(json& j, const QuasiArcReport& r) {
  j = {{"anchor", "obstacle-avoiding quasi-arc"},
       {"pass", r.pass},
       {"proof_regime", r.proof_regime},
       {"regime_note", r.regime_note},
       {"lambda_arc", r.lambda_arc},
       {"lambda_local", r.lambda_local},
       {"window", r.window},
       {"lambda_clearance", r.lambda_clearance},
       {"lambda_hat", r.lambda_hat},
       {"diam_ratio", r.diam_ratio},
       {"diam_floor", r.diam_floor},
       {"drift_total", r.drift_total},
       {"drift_limit", r.drift_limit},
       {"persistence_worst", r.persistence_worst},
       {"stages", r.stages.size()},
       {"stage0_terminated", r.stage0_terminated},
       {"failure", r.failure}};
}

void to_json(json& j, const ArcVerification& r) {
  j = {{"anchor", "quasi-arc verification"}, {"pass", r.pass}, {"lambda", r.lambda},
       {"worst", {r.i, r.j}},                {"simple", r.simple}};
}

void to_json(json& j, const Distortion& r) {
  j = {{"lambda", r.lambda}, {"c", r.c}, {"pairs", r.pairs}, {"worst", {r.a, r.b}}};
}

void to_json(json& j, const TransversalityProfile& r) {
  j = {{"anchor", "transversality"},     {"M", r.M},
       {"eta", r.eta},                   {"worst_fragment", r.worst_fragment},
       {"points_diameter", r.points_diameter}, {"non_transversal", r.non_transversal}};
}

void to_json(json& j, const PersistenceReport& r) {
  j = {{"anchor", "persistence in the coned-off graph"},
       {"empty", r.empty},
       {"distortion", r.distortion},
       {"image_diameter", r.image_diameter},
       {"source_diameter", r.source_diameter},
       {"collapse", r.collapse}};
}

}  // namespace hyparc
