#pragma once

// Run manifests: a JSON sidecar next to every file the CLI writes, recording
// what produced it.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lfd::cli {

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);
/// SHA-256 of a file's contents. Throws FormatError when it cannot be read.
std::string sha256_file(const std::filesystem::path& path);

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string tool_version;
  std::string timestamp;  // UTC, ISO 8601
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;

  std::string to_json() const;
};

/// UTC ISO 8601 time. Honors SOURCE_DATE_EPOCH for reproducible runs.
std::string utc_timestamp();

/// Path of the manifest that accompanies `output`: "<output>.manifest.json".
std::filesystem::path manifest_path(const std::filesystem::path& output);

}  // namespace lfd::cli
