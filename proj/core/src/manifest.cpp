#include "kostlan/manifest.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <openssl/evp.h>

#include "kostlan/error.hpp"

namespace kostlan {
namespace {

class Digest {
 public:
  Digest() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 initialisation failed");
    }
  }
  ~Digest() { EVP_MD_CTX_free(ctx_); }
  Digest(const Digest&) = delete;
  Digest& operator=(const Digest&) = delete;

  void update(const void* data, std::size_t size) {
    if (EVP_DigestUpdate(ctx_, data, size) != 1) throw Error("SHA-256 update failed");
  }
  std::string hex() {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_, out, &len) != 1) throw Error("SHA-256 finalisation failed");
    std::string s;
    for (unsigned int i = 0; i < len; ++i) s += fmt::format("{:02x}", out[i]);
    return s;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string_view version() { return KOSTLAN_VERSION; }

std::string sha256_hex(std::string_view data) {
  Digest d;
  d.update(data.data(), data.size());
  return d.hex();
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for hashing", path));
  Digest d;
  char buf[1 << 15];
  while (f) {
    f.read(buf, sizeof buf);
    d.update(buf, static_cast<std::size_t>(f.gcount()));
  }
  return d.hex();
}

OutputFile describe_output(const std::string& path) {
  return {path, sha256_file(path), std::filesystem::file_size(path)};
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentManifest start_manifest(const AppConfig& cfg) {
  ExperimentManifest m;
  m.subcommand = cfg.subcommand;
  m.config = cfg.entries();
  m.master_seed = cfg.seed.value;
  m.code_version = std::string(version());
  m.started_at = utc_timestamp();
  return m;
}

std::string manifest_json(const ExperimentManifest& m) {
  nlohmann::ordered_json j;
  j["subcommand"] = m.subcommand;
  j["master_seed"] = m.master_seed;
  j["code_version"] = m.code_version;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& e : m.config) {
    cfg[e.key] = {{"value", e.value}, {"origin", std::string(to_string(e.origin))}};
  }
  j["config"] = cfg;
  nlohmann::ordered_json outs = nlohmann::ordered_json::array();
  for (const auto& o : m.outputs) {
    outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  }
  j["outputs"] = outs;
  return j.dump(2);
}

void write_manifest(const std::string& path, const ExperimentManifest& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path));
  f << manifest_json(m) << '\n';
}

}  // namespace kostlan
