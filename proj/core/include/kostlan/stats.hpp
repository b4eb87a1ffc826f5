#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace kostlan {

struct RunConfig {
  int n = 200;
  int samples = 1000;
  std::uint64_t master_seed = 1;
  int threads = 1;
  bool decomposition_check = true;
  /// Off makes wall_time_s zero so outputs depend on the seed alone.
  bool record_timing = true;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct SampleRecord {
  std::uint64_t sample_index = 0;
  double e_n = 0.0;
  double i_n = 0.0;
  double s_n = 0.0;
  double identity_residual = 0.0;
  double root_residual_max = 0.0;
  double wall_time_s = 0.0;
  bool failed = false;
  std::string failure;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Records are ordered by sample_index; sample i uses stream (master_seed, i).
std::vector<SampleRecord> run_monte_carlo(const RunConfig& cfg, const ProgressFn& progress = {});
SampleRecord run_sample(int n, std::uint64_t master_seed, std::uint64_t index,
                        bool record_timing = true);

struct KStatistics {
  std::size_t count = 0;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
  double se1 = 0.0, se2 = 0.0, se3 = 0.0, se4 = 0.0;
};

/// Unbiased k-statistics from centered power sums, with jackknife errors.
KStatistics k_statistics(std::span<const double> values, bool jackknife = true);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t count = 0;
};

/// One-sample Kolmogorov-Smirnov test against N(0, 1); needs at least 100 values.
KsResult normality_test(std::span<const double> standardized);
/// Asymptotic Kolmogorov tail with the Stephens small-sample correction.
double kolmogorov_p_value(double statistic, std::size_t count);
/// Two-sample Kolmogorov-Smirnov test.
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b);

std::vector<double> standardize(std::span<const double> values, double center, double scale);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct TailRow {
  double t = 0.0;
  double threshold = 0.0;
  std::size_t count = 0;
  std::size_t total = 0;
  double fraction = 0.0;
  Interval ci;
  double gaussian_reference = 0.0;
};

/// P(|E - mean| >= T sqrt(n)) per T against 2 (1 - Phi(T / sqrt(c_star))).
std::vector<TailRow> concentration_check(std::span<const double> energies, int n,
                                         std::span<const double> t_grid, double c_star);

struct CovarianceSplit {
  double var_i = 0.0;   // Var(I_n) / n
  double var_s = 0.0;   // Var(S_n) / n
  double cov_is = 0.0;  // Cov(I_n, S_n) / n
};
CovarianceSplit covariance_split(std::span<const SampleRecord> records, int n);

struct SummaryStats {
  int n = 0;
  std::size_t total = 0;
  std::size_t failures = 0;
  KStatistics energy;
  KsResult ks_sample;    // standardized by sample mean and sd
  KsResult ks_analytic;  // standardized by the exact mean and sqrt(c_star n)
  std::vector<TailRow> tails;
  CovarianceSplit split;
  double mean_i_over_n = 0.0, se_i_over_n = 0.0;
  double mean_s_over_n = 0.0, se_s_over_n = 0.0;
  double max_identity_residual = 0.0;
};

SummaryStats summarize(std::span<const SampleRecord> records, int n, double c_star,
                       std::span<const double> t_grid = {});

std::vector<double> energies_of(std::span<const SampleRecord> records);

}  // namespace kostlan
