#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace clustereval {

struct InputDigest {
  std::string role;
  std::string path;
  std::string sha256;
};

// Provenance block embedded in every JSON report.
struct RunManifest {
  std::string tool_version = CLUSTEREVAL_VERSION;
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<InputDigest> inputs;
  std::optional<std::string> timestamp;

  // Hashes the file (or, for a directory, its regular files in name order).
  void add_input(const std::string& role, const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
};

std::string sha256_hex(const std::filesystem::path& path);
std::string utc_timestamp();

}  // namespace clustereval
