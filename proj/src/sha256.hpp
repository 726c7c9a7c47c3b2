#pragma once

#include <cstdint>
#include <string>

namespace shapeforge {

// Minimal SHA-256, enough for manifest hashing. Returns lowercase hex.
std::string sha256_hex(const std::string& data);

// Hash of a file's bytes. Throws IoError when the file cannot be read.
std::string sha256_file_hex(const std::string& path);

}  // namespace shapeforge
