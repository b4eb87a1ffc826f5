#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "kostlan/config.hpp"
#include "kostlan/error.hpp"

using namespace kostlan;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Config, Defaults) {
  const auto c = default_config("mc");
  EXPECT_EQ(c.n.value, 200);
  EXPECT_EQ(c.samples.value, 1000);
  EXPECT_EQ(c.seed.value, 20240611u);
  EXPECT_EQ(c.n.origin, Origin::default_value);
  EXPECT_NO_THROW(c.validate());
  EXPECT_THROW(default_config("bogus"), ConfigError);
}

TEST(Config, OutOfRangeNamesField) {
  FlagOverrides f;
  f.n = -5;
  try {
    parse_config("mc", std::nullopt, f);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("n = -5"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeyRejected) {
  const auto path = write_temp("kostlan_unknown.ini", "n = 10\nfrobnicate = 3\n");
  try {
    parse_config("mc", path, {});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("frobnicate"), std::string::npos);
  }
}

TEST(Config, BadValues) {
  EXPECT_THROW(parse_config("mc", write_temp("kostlan_bad1.ini", "n = ten\n"), {}), ConfigError);
  EXPECT_THROW(parse_config("mc", write_temp("kostlan_bad2.ini", "quick = maybe\n"), {}), ConfigError);
  EXPECT_THROW(parse_config("mc", std::string("/nonexistent/kostlan.ini"), {}), ConfigError);
}

TEST(Config, Precedence) {
  const auto path = write_temp("kostlan_prec.ini",
                               "# comment\nn = 50\nsamples = 77\nthreads = 2\nout = from_file\n");
  std::map<std::string, std::string> env{{"KOSTLAN_THREADS", "3"}, {"KOSTLAN_OUT_DIR", "from_env"}};
  auto getenv_fn = [&](const char* k) -> const char* {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  FlagOverrides f;
  f.n = 60;
  const auto c = parse_config("mc", path, f, getenv_fn);
  EXPECT_EQ(c.n.value, 60);
  EXPECT_EQ(c.n.origin, Origin::flag);
  EXPECT_EQ(c.samples.value, 77);
  EXPECT_EQ(c.samples.origin, Origin::file);
  EXPECT_EQ(c.threads.value, 3);
  EXPECT_EQ(c.threads.origin, Origin::env);
  EXPECT_EQ(c.out.value, "from_env");
  EXPECT_EQ(c.seed.origin, Origin::default_value);

  const auto echo = c.echo();
  EXPECT_NE(echo.find("(flag)"), std::string::npos);
  EXPECT_NE(echo.find("(file)"), std::string::npos);
  EXPECT_NE(echo.find("(env)"), std::string::npos);
  EXPECT_NE(echo.find("(default)"), std::string::npos);
  EXPECT_EQ(c.entries().size(), 9u);
}
