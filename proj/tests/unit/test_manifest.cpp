#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kostlan/commands.hpp"
#include "kostlan/config.hpp"
#include "kostlan/manifest.hpp"

using namespace kostlan;

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto p = (std::filesystem::temp_directory_path() / "kostlan_sha.txt").string();
  std::ofstream(p, std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(p), sha256_hex("abc"));
}

TEST(Manifest, JsonKeys) {
  auto cfg = default_config("constants");
  auto m = start_manifest(cfg);
  m.finished_at = utc_timestamp();
  const auto j = nlohmann::json::parse(manifest_json(m));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{"code_version", "config", "finished_at", "master_seed",
                                            "outputs", "started_at", "subcommand"}));
  EXPECT_EQ(j["config"]["n"]["origin"], "default");
  EXPECT_EQ(j["master_seed"], 20240611u);
  EXPECT_EQ(m.started_at.size(), 20u);
  EXPECT_EQ(m.started_at.back(), 'Z');
}

TEST(Manifest, SameSeedSameDigests) {
  std::vector<std::string> digests;
  for (const char* dir : {"kostlan_mc_a", "kostlan_mc_b"}) {
    const auto out = (std::filesystem::temp_directory_path() / dir).string();
    std::filesystem::remove_all(out);
    FlagOverrides f;
    f.n = 20;
    f.samples = 30;
    f.seed = 5;
    f.out = out;
    auto cfg = parse_config("mc", std::nullopt, f);
    cfg.record_timing.set(false, Origin::flag);
    std::ostringstream o, e;
    ASSERT_EQ(run_subcommand(cfg, o, e), 0) << e.str();
    std::ifstream mf(out + "/manifest.json");
    const auto j = nlohmann::json::parse(mf);
    for (const auto& entry : j["outputs"]) {
      const std::string path = entry["path"];
      if (path.find("records.csv") != std::string::npos) digests.push_back(entry["sha256"]);
    }
  }
  ASSERT_EQ(digests.size(), 2u);
  EXPECT_EQ(digests[0], digests[1]);
}
