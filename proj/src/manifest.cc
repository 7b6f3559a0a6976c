#include "clustereval/manifest.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

namespace clustereval {

namespace {

struct DigestContextDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using DigestContext = std::unique_ptr<EVP_MD_CTX, DigestContextDeleter>;

void hash_file(EVP_MD_CTX* ctx, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, in.gcount());
  }
}

}  // namespace

std::string sha256_hex(const std::filesystem::path& path) {
  DigestContext ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 unavailable");
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string name = f.filename().string();
      EVP_DigestUpdate(ctx.get(), name.data(), name.size() + 1);
      hash_file(ctx.get(), f);
    }
  } else {
    hash_file(ctx.get(), path);
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add_input(const std::string& role,
                            const std::filesystem::path& path) {
  inputs.push_back({role, path.string(), sha256_hex(path)});
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json out;
  out["tool"] = "clustereval";
  out["version"] = tool_version;
  out["command"] = command;
  out["config"] = config;
  auto inputs_json = nlohmann::ordered_json::array();
  for (const auto& in : inputs)
    inputs_json.push_back(nlohmann::ordered_json{
        {"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  out["inputs"] = std::move(inputs_json);
  if (timestamp) out["timestamp"] = *timestamp;
  return out;
}

}  // namespace clustereval
