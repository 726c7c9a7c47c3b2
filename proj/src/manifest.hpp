#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace shapeforge::manifest {

inline const char* kToolVersion = "shapeforge 0.1.0";

// Reproducibility record written next to every mutating command's output.
struct RunManifest {
  std::string command;
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  std::string config_hash;                          // sha256 of the config
  std::map<std::string, std::string> input_hashes;  // path -> sha256
  std::string timestamp;                            // ISO-8601 UTC
  nlohmann::json extra = nlohmann::json::object();  // per-stage details
};

// ISO-8601 UTC now; honors SOURCE_DATE_EPOCH so archived runs can be
// reproduced bit for bit.
std::string current_timestamp();

RunManifest make_manifest(const std::string& command,
                          const std::string& config_json, std::uint64_t seed,
                          const std::map<std::string, std::string>& input_paths);

std::string to_json(const RunManifest& m);
void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace shapeforge::manifest
