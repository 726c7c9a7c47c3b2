#include "manifest.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>

#include "errors.hpp"
#include "sha256.hpp"

namespace shapeforge::manifest {

std::string current_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    try {
      now = static_cast<std::time_t>(std::stoll(epoch));
    } catch (const std::exception&) {
      // Ignore an unparseable override.
    }
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest make_manifest(const std::string& command,
                          const std::string& config_json, std::uint64_t seed,
                          const std::map<std::string, std::string>& input_paths) {
  RunManifest m;
  m.command = command;
  m.seed = seed;
  m.config_hash = sha256_hex(config_json);
  m.timestamp = current_timestamp();
  for (const auto& [name, path] : input_paths) {
    m.input_hashes[name] = sha256_file_hex(path);
  }
  return m;
}

std::string to_json(const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["seed"] = m.seed;
  j["config_hash"] = m.config_hash;
  j["input_hashes"] = m.input_hashes;
  j["timestamp"] = m.timestamp;
  j["details"] = m.extra;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << to_json(m);
}

}  // namespace shapeforge::manifest
