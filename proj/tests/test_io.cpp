#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hyparc/io.hpp"
#include "hyparc/presets.hpp"

using namespace hyparc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }

  TEST_CASE("jsonl round trip") {
    auto d = scratch_dir("hyparc_io_jsonl");
    std::vector<json> recs{{{"v", 1}, {"word", "a.b"}}, {{"v", 2}, {"x", 0.5}}};
    write_jsonl(d / "r.jsonl", recs);
    CHECK(read_jsonl(d / "r.jsonl") == recs);
    CHECK(file_sha256(d / "r.jsonl") == sha256_hex(recs[0].dump() + "\n" + recs[1].dump() + "\n"));
    fs::remove_all(d);
  }

  TEST_CASE("manifest and staleness") {
    auto d = scratch_dir("hyparc_io_manifest");
    Config c;
    c.preset = "z2z2";
    c.radius = 5;
    write_text(d / "a.txt", "alpha\n");
    write_text(d / "b.txt", "beta\n");
    write_manifest(d, "build", c, {"a.txt"});
    write_manifest(d, "audit", c, {"b.txt"});
    auto m = read_manifest(d);
    CHECK(m.command == "build");
    CHECK(m.files.size() == 2);
    CHECK(m.files.at("a.txt") == sha256_hex("alpha\n"));
    CHECK(m.config.get<Config>().radius == 5);
    CHECK(stale_files(d, m).empty());

    write_text(d / "b.txt", "changed\n");
    CHECK(stale_files(d, m) == std::vector<std::string>{"b.txt"});
    fs::remove(d / "a.txt");
    CHECK(stale_files(d, m).size() == 2);
    fs::remove_all(d);
  }

  TEST_CASE("config round trip") {
    Config c;
    c.preset = "carpet";
    c.presentation = "g.txt";
    c.radius = 9;
    c.depth = 3;
    c.epsilon = 0.25;
    c.seed = 77;
    c.threads = 2;
    c.budget_vertices = 1234;
    json j = c;
    Config back = j.get<Config>();
    CHECK(back.preset == c.preset);
    CHECK(back.presentation == c.presentation);
    CHECK(back.radius == c.radius);
    CHECK(back.depth == c.depth);
    CHECK(back.epsilon == c.epsilon);
    CHECK(back.seed == c.seed);
    CHECK(back.threads == c.threads);
    CHECK(back.budget_vertices == c.budget_vertices);
    CHECK(preset_names().size() == 5);
  }
}
