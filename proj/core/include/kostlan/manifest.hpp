#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kostlan/config.hpp"

namespace kostlan {

std::string_view version();

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string& path);

struct OutputFile {
  std::string path;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

OutputFile describe_output(const std::string& path);

struct ExperimentManifest {
  std::string subcommand;
  std::vector<AppConfig::Entry> config;
  std::uint64_t master_seed = 0;
  std::string code_version;
  std::string started_at;
  std::string finished_at;
  std::vector<OutputFile> outputs;
};

ExperimentManifest start_manifest(const AppConfig& cfg);
/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();
std::string manifest_json(const ExperimentManifest& m);
void write_manifest(const std::string& path, const ExperimentManifest& m);

}  // namespace kostlan
