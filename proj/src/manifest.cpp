#include "cnfxor/manifest.hpp"

#include <fstream>

#include "cnfxor/error.hpp"
#include "cnfxor/rng.hpp"

namespace cnfxor {

nlohmann::json manifest_json(const RunManifest& m) {
  return {
      {"tool", "cnfxor"},
      {"version", std::string(kVersion)},
      {"rng", std::string(kRngName)},
      {"command", m.command},
      {"args", m.args},
      {"master_seed", m.master_seed},
      {"config", m.config},
      {"results", m.results},
      {"outputs", m.outputs},
      {"wall_time_seconds", m.wall_time_seconds},
  };
}

RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    j.at("command").get_to(m.command);
    j.at("args").get_to(m.args);
    m.master_seed = j.value("master_seed", std::uint64_t{0});
    m.config = j.value("config", nlohmann::json::object());
    m.results = j.value("results", nlohmann::json::object());
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open manifest " + path.string() + " for writing");
  out << manifest_json(manifest).dump(2) << '\n';
  if (!out) throw Error("failed to write manifest " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace cnfxor
