#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cnfxor {

inline constexpr std::string_view kVersion = "1.0.0";

/// Everything needed to re-run a command: the argument vector is replayed
/// verbatim, the rest is provenance.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // excluding the program name
  std::uint64_t master_seed = 0;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;
};

nlohmann::json manifest_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace cnfxor
