#pragma once

#include <string>
#include <vector>

#include "kostlan/stats.hpp"

namespace kostlan {

inline constexpr const char* kRecordHeader =
    "sample_index,e_n,i_n,s_n,identity_residual,root_residual_max,wall_time_s";

/// Shortest form that still round-trips: 17 significant digits.
std::string format_double(double v);

/// Failed samples are written with a trailing `# failed: reason` comment line.
void write_records_csv(const std::string& path, const std::vector<SampleRecord>& records);
std::vector<SampleRecord> read_records_csv(const std::string& path);

/// Generic numeric table with a header row.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

struct HistogramBin {
  double lo, hi;
  std::size_t count;
};
std::vector<HistogramBin> histogram(const std::vector<double>& values, int bins);

/// (theoretical normal quantile, sorted standardized value) pairs.
std::vector<std::pair<double, double>> normal_qq(const std::vector<double>& standardized);

/// Inverse of the standard normal CDF.
double normal_quantile(double p);

/// Creates the directory (and parents); throws Error on failure.
void ensure_directory(const std::string& path);

}  // namespace kostlan
