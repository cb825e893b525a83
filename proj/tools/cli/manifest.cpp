#include "cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "editmbr/corpus.hpp"
#include "editmbr/errors.hpp"
#include "json.hpp"

namespace editmbr::cli {

using json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

namespace {

json files_to_json(const std::vector<ManifestFile>& files) {
  json arr = json::array();
  for (const auto& f : files) {
    json j;
    if (!f.role.empty()) j["role"] = f.role;
    j["path"] = f.path;
    j["sha256"] = f.sha256;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<ManifestFile> files_from_json(const json& arr) {
  std::vector<ManifestFile> files;
  for (const auto& j : arr) {
    files.push_back({j.value("role", ""), j.at("path").get<std::string>(),
                     j.at("sha256").get<std::string>()});
  }
  return files;
}

}  // namespace

std::string RunManifest::to_json() const {
  json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["argv"] = argv;
  json cfg = json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["inputs"] = files_to_json(inputs);
  j["outputs"] = files_to_json(outputs);
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("config").items()) m.config.emplace_back(k, v.get<std::string>());
    m.inputs = files_from_json(j.at("inputs"));
    m.outputs = files_from_json(j.at("outputs"));
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed run manifest: ") + e.what());
  }
}

}  // namespace editmbr::cli
