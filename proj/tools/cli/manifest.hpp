#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace editmbr::cli {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestFile {
  // For outputs: the flag whose value is the path ("--out", "--trace"), or
  // "stdout" for captured standard output.
  std::string role;
  std::string path;
  std::string sha256;
};

// Everything needed to reproduce a run: the fully materialised argument list
// (every default spelled out), the resolved configuration for human readers,
// and digests of what went in and came out.
struct RunManifest {
  std::string tool = "edit-mbr";
  std::string version;
  std::string command;
  std::vector<std::string> argv;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ManifestFile> inputs;
  std::vector<ManifestFile> outputs;

  std::string to_json() const;
  // Throws DataError on malformed JSON or missing fields.
  static RunManifest from_json(std::string_view text);
};

}  // namespace editmbr::cli
