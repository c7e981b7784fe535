#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyparc/audits.hpp"
#include "hyparc/boundary.hpp"
#include "hyparc/embed.hpp"
#include "hyparc/quasiarc.hpp"

namespace hyparc {

using json = nlohmann::json;

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records);
std::vector<json> read_jsonl(const std::filesystem::path& path);

/// Artifact directory index: the producing command, its configuration and a
/// content hash per file.
struct Manifest {
  std::string command;
  json config;
  std::map<std::string, std::string> files;
};

/// Hashes the listed files and writes manifest.json; merges with an
/// existing manifest in the same directory.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const json& config,
                    const std::vector<std::string>& files);
Manifest read_manifest(const std::filesystem::path& dir);
/// Files whose current content no longer matches the manifest.
std::vector<std::string> stale_files(const std::filesystem::path& dir, const Manifest& m);

std::vector<json> ball_records(const CuspedBall& ball);
std::vector<json> net_records(const Net& net);
std::vector<json> family_records(const std::vector<ObstacleSet>& family);
std::vector<json> arc_records(const Net& net, const Arc& arc);
std::vector<json> stage_records(const QuasiArcReport& report);
std::vector<json> embedding_records(const ConeEmbedding& emb);
std::string profile_csv(const TransversalityProfile& profile);
std::string clearance_csv(const std::vector<ObstacleSet>& family, const QuasiArcReport& report);

void to_json(json& j, const SeparationReport& r);
void to_json(json& j, const DoublingReport& r);
void to_json(json& j, const LinConnReport& r);
void to_json(json& j, const PorosityReport& r);
void to_json(json& j, const AvoidabilityReport& r);
void to_json(json& j, const RescaleReport& r);
void to_json(json& j, const SandwichReport& r);
void to_json(json& j, const StageLog& r);
void to_json(json& j, const QuasiArcReport& r);
void to_json(json& j, const ArcVerification& r);
void to_json(json& j, const Distortion& r);
void to_json(json& j, const TransversalityProfile& r);
void to_json(json& j, const PersistenceReport& r);

}  // namespace hyparc
