#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bruhat::cli {

inline constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Records how an artifact set was produced. Written next to --out files as
// <out>.manifest.json.
struct RunManifest {
  std::vector<std::string> command_line;
  std::optional<std::uint64_t> seed;
  std::size_t shards = 0;
  unsigned threads = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;

  nlohmann::ordered_json to_json() const;
  void write(const std::string& path) const;
};

}  // namespace bruhat::cli
