#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

namespace refaudit {

inline constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(const std::string& bytes);
// Throws Error when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

// Provenance of one run. Deliberately free of timestamps and output paths so
// identical inputs give an identical manifest.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> input_digests;  // input name -> sha256
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
};

}  // namespace refaudit
