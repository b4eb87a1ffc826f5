#include "kostlan/io.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <charconv>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "kostlan/error.hpp"

namespace kostlan {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(fmt::format("cannot create directory {}: {}", path, ec.message()));
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path));
  return f;
}

double parse_double(const std::string& s, const std::string& path) {
  double v;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    // from_chars rejects "inf"/"nan" spellings produced by fmt.
    try {
      std::size_t used = 0;
      v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw Error(fmt::format("{}: cannot parse '{}' as a number", path, s));
    }
  }
  return v;
}

}  // namespace

void write_records_csv(const std::string& path, const std::vector<SampleRecord>& records) {
  auto f = open_out(path);
  f << kRecordHeader << '\n';
  for (const auto& r : records) {
    if (r.failed) {
      f << "# failed " << r.sample_index << ": " << r.failure << '\n';
      continue;
    }
    f << r.sample_index << ',' << format_double(r.e_n) << ',' << format_double(r.i_n) << ','
      << format_double(r.s_n) << ',' << format_double(r.identity_residual) << ','
      << format_double(r.root_residual_max) << ',' << format_double(r.wall_time_s) << '\n';
  }
  if (!f) throw Error(fmt::format("write to {} failed", path));
}

std::vector<SampleRecord> read_records_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot open {} for reading", path));
  std::string line;
  if (!std::getline(f, line) || line != kRecordHeader) {
    throw Error(fmt::format("{}: unexpected header", path));
  }
  std::vector<SampleRecord> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line.rfind("# failed ", 0) == 0) {
      SampleRecord r;
      r.failed = true;
      const auto colon = line.find(':');
      r.sample_index = std::stoull(line.substr(9, colon - 9));
      r.failure = colon == std::string::npos ? "" : line.substr(colon + 2);
      out.push_back(r);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) throw Error(fmt::format("{}: expected 7 columns in '{}'", path, line));
    SampleRecord r;
    r.sample_index = std::stoull(cells[0]);
    r.e_n = parse_double(cells[1], path);
    r.i_n = parse_double(cells[2], path);
    r.s_n = parse_double(cells[3], path);
    r.identity_residual = parse_double(cells[4], path);
    r.root_residual_max = parse_double(cells[5], path);
    r.wall_time_s = parse_double(cells[6], path);
    out.push_back(r);
  }
  return out;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto f = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
  f << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << format_double(row[i]);
    f << '\n';
  }
  if (!f) throw Error(fmt::format("write to {} failed", path));
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  std::vector<HistogramBin> out;
  if (values.empty()) return out;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double lo = *mn, hi = *mx;
  if (hi == lo) hi = lo + 1.0;
  const double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) out.push_back({lo + b * w, lo + (b + 1) * w, 0});
  for (double v : values) {
    int b = static_cast<int>((v - lo) / w);
    b = std::clamp(b, 0, bins - 1);
    ++out[b].count;
  }
  return out;
}

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> z;
  return boost::math::quantile(z, p);
}

std::vector<std::pair<double, double>> normal_qq(const std::vector<double>& standardized) {
  std::vector<double> v = standardized;
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.emplace_back(normal_quantile((i + 0.5) / n), v[i]);
  }
  return out;
}

}  // namespace kostlan
