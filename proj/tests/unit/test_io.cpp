#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "kostlan/error.hpp"
#include "kostlan/io.hpp"
#include "kostlan/rng.hpp"

using namespace kostlan;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(Csv, RecordsRoundTrip) {
  std::vector<SampleRecord> recs(3);
  recs[0] = {0, -8217.123456789012, -57.7, -21.1, 1e-12, 3e-15, 0.25, false, ""};
  recs[1] = {1, 0.1, 1.0 / 3.0, -2.0 / 7.0, 0.0, 0.0, 0.0, false, ""};
  recs[2].sample_index = 2;
  recs[2].failed = true;
  recs[2].failure = "root count 99 != degree 100";
  const auto path = temp_path("kostlan_records.csv");
  write_records_csv(path, recs);
  const auto back = read_records_csv(path);
  ASSERT_EQ(back.size(), 3u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].sample_index, recs[i].sample_index);
    EXPECT_EQ(back[i].e_n, recs[i].e_n);
    EXPECT_EQ(back[i].i_n, recs[i].i_n);
    EXPECT_EQ(back[i].s_n, recs[i].s_n);
    EXPECT_EQ(back[i].identity_residual, recs[i].identity_residual);
    EXPECT_EQ(back[i].wall_time_s, recs[i].wall_time_s);
  }
  EXPECT_TRUE(back[2].failed);
  EXPECT_EQ(back[2].failure, recs[2].failure);
}

TEST(Csv, HeaderGolden) {
  const auto path = temp_path("kostlan_header.csv");
  write_records_csv(path, {});
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "sample_index,e_n,i_n,s_n,identity_residual,root_residual_max,wall_time_s");
  std::ofstream(path) << "index,e\n1,2\n";
  EXPECT_THROW(read_records_csv(path), Error);
}

TEST(Csv, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -1e-300, 6.02214076e23, 2.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(Histogram, CountsSumToTotal) {
  ComplexGaussianStream s(1, 0);
  std::vector<double> v(1234);
  for (auto& x : v) x = s.next_normal();
  const auto h = histogram(v, 30);
  ASSERT_EQ(h.size(), 30u);
  std::size_t total = 0;
  for (const auto& b : h) total += b.count;
  EXPECT_EQ(total, v.size());
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_DOUBLE_EQ(h[i].lo, h[i - 1].hi);
  EXPECT_THROW(histogram(v, 0), ConfigError);
}

TEST(QQ, Monotone) {
  ComplexGaussianStream s(2, 0);
  std::vector<double> v(500);
  for (auto& x : v) x = s.next_normal();
  const auto qq = normal_qq(v);
  ASSERT_EQ(qq.size(), v.size());
  for (std::size_t i = 1; i < qq.size(); ++i) {
    EXPECT_LT(qq[i - 1].first, qq[i].first);
    EXPECT_LE(qq[i - 1].second, qq[i].second);
  }
}

TEST(Quantile, KnownValues) {
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-14);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-9);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-7);
}
