#include "kostlan/stats.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>

#include "kostlan/energy.hpp"
#include "kostlan/error.hpp"
#include "kostlan/parallel.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/roots.hpp"
#include "kostlan/special.hpp"

namespace kostlan {
namespace {

struct PowerSums {
  double n = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
};

std::array<double, 4> kstats_from(const PowerSums& p) {
  const double n = p.n, s1 = p.s1, s2 = p.s2, s3 = p.s3, s4 = p.s4;
  std::array<double, 4> k{};
  k[0] = s1 / n;
  if (n >= 2) k[1] = (n * s2 - s1 * s1) / (n * (n - 1));
  if (n >= 3) k[2] = (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2));
  if (n >= 4) {
    k[3] = (-6 * s1 * s1 * s1 * s1 + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 -
            4 * n * (n + 1) * s1 * s3 + n * n * (n + 1) * s4) /
           (n * (n - 1) * (n - 2) * (n - 3));
  }
  return k;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (samples < 2) throw ConfigError("samples must be at least 2");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

SampleRecord run_sample(int n, std::uint64_t master_seed, std::uint64_t index, bool record_timing) {
  SampleRecord rec;
  rec.sample_index = index;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EllipticPolynomial p = sample_elliptic(n, master_seed, index);
    const RootSet rs = find_roots(p);
    const EnergyBreakdown b = decomposition_check(p, rs);
    rec.e_n = b.e_n;
    rec.i_n = b.i_n;
    rec.s_n = b.s_n;
    rec.identity_residual = b.identity_residual;
    rec.root_residual_max = rs.max_residual();
  } catch (const Error& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  if (record_timing) {
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return rec;
}

std::vector<SampleRecord> run_monte_carlo(const RunConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const std::size_t m = static_cast<std::size_t>(cfg.samples);
  std::vector<SampleRecord> out(m);
  std::mutex mu;
  std::size_t done = 0;
  parallel_for(m, cfg.threads, [&](std::size_t i) {
    out[i] = run_sample(cfg.n, cfg.master_seed, i, cfg.record_timing);
    if (progress) {
      std::lock_guard<std::mutex> lock(mu);
      progress(++done, m);
    }
  });
  return out;
}

KStatistics k_statistics(std::span<const double> values, bool jackknife) {
  KStatistics ks;
  ks.count = values.size();
  if (values.empty()) return ks;
  double center = 0.0;
  for (double v : values) center += v;
  center /= static_cast<double>(values.size());
  PowerSums p;
  p.n = static_cast<double>(values.size());
  for (double v : values) {
    const double x = v - center;
    const double x2 = x * x;
    p.s1 += x;
    p.s2 += x2;
    p.s3 += x2 * x;
    p.s4 += x2 * x2;
  }
  const auto k = kstats_from(p);
  ks.k1 = k[0] + center;
  ks.k2 = k[1];
  ks.k3 = k[2];
  ks.k4 = k[3];
  if (ks.k2 == 0.0) {
    ks.k3 = ks.k4 = 0.0;
    return ks;
  }
  if (!jackknife || values.size() < 5) return ks;
  const double n = p.n;
  std::array<double, 4> sum{}, sum2{};
  for (double v : values) {
    const double x = v - center;
    const double x2 = x * x;
    PowerSums q{n - 1, p.s1 - x, p.s2 - x2, p.s3 - x2 * x, p.s4 - x2 * x2};
    const auto kj = kstats_from(q);
    for (int r = 0; r < 4; ++r) {
      sum[r] += kj[r];
      sum2[r] += kj[r] * kj[r];
    }
  }
  std::array<double, 4> se{};
  for (int r = 0; r < 4; ++r) {
    const double mean = sum[r] / n;
    const double ss = std::max(sum2[r] - n * mean * mean, 0.0);
    se[r] = std::sqrt((n - 1) / n * ss);
  }
  ks.se1 = se[0];
  ks.se2 = se[1];
  ks.se3 = se[2];
  ks.se4 = se[3];
  return ks;
}

double kolmogorov_p_value(double d, std::size_t count) {
  const double rn = std::sqrt(static_cast<double>(count));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult normality_test(std::span<const double> z) {
  if (z.size() < 100) throw ConfigError("normality test needs at least 100 values");
  std::vector<double> v(z.begin(), z.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = normal_cdf(v[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_p_value(d, v.size()), v.size()};
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const auto ne = static_cast<std::size_t>(std::llround(na * nb / (na + nb)));
  return {d, kolmogorov_p_value(d, std::max<std::size_t>(ne, 1)), a.size() + b.size()};
}

std::vector<double> standardize(std::span<const double> values, double center, double scale) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back((v - center) / scale);
  return out;
}

Interval wilson_interval(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double dn = static_cast<double>(n);
  const double p = k / dn;
  const double z2 = z * z;
  const double den = 1.0 + z2 / dn;
  const double center = (p + z2 / (2 * dn)) / den;
  const double half = z * std::sqrt(p * (1 - p) / dn + z2 / (4 * dn * dn)) / den;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<TailRow> concentration_check(std::span<const double> e, int n,
                                         std::span<const double> t_grid, double c_star) {
  double mean = 0.0;
  for (double v : e) mean += v;
  mean /= static_cast<double>(e.size());
  const double rn = std::sqrt(static_cast<double>(n));
  std::vector<TailRow> out;
  for (double t : t_grid) {
    TailRow row;
    row.t = t;
    row.threshold = t * rn;
    row.total = e.size();
    for (double v : e) row.count += std::abs(v - mean) >= row.threshold ? 1 : 0;
    row.fraction = static_cast<double>(row.count) / row.total;
    row.ci = wilson_interval(row.count, row.total);
    row.gaussian_reference = 2.0 * normal_sf(t / std::sqrt(c_star));
    out.push_back(row);
  }
  return out;
}

CovarianceSplit covariance_split(std::span<const SampleRecord> records, int n) {
  double mi = 0, ms = 0, c = 0;
  std::size_t k = 0;
  for (const auto& r : records) {
    if (r.failed) continue;
    mi += r.i_n;
    ms += r.s_n;
    ++k;
  }
  CovarianceSplit out;
  if (k < 2) return out;
  mi /= k;
  ms /= k;
  double vi = 0, vs = 0;
  for (const auto& r : records) {
    if (r.failed) continue;
    vi += (r.i_n - mi) * (r.i_n - mi);
    vs += (r.s_n - ms) * (r.s_n - ms);
    c += (r.i_n - mi) * (r.s_n - ms);
  }
  const double denom = (k - 1.0) * n;
  return {vi / denom, vs / denom, c / denom};
}

std::vector<double> energies_of(std::span<const SampleRecord> records) {
  std::vector<double> e;
  for (const auto& r : records) {
    if (!r.failed) e.push_back(r.e_n);
  }
  return e;
}

SummaryStats summarize(std::span<const SampleRecord> records, int n, double c_star,
                       std::span<const double> t_grid) {
  SummaryStats s;
  s.n = n;
  s.total = records.size();
  std::vector<double> e, i_n, s_n;
  for (const auto& r : records) {
    if (r.failed) {
      ++s.failures;
      continue;
    }
    e.push_back(r.e_n);
    i_n.push_back(r.i_n / n);
    s_n.push_back(r.s_n / n);
    s.max_identity_residual = std::max(s.max_identity_residual, std::abs(r.identity_residual));
  }
  s.energy = k_statistics(e);
  if (e.size() >= 100) {
    s.ks_sample = normality_test(standardize(e, s.energy.k1, std::sqrt(s.energy.k2)));
    s.ks_analytic = normality_test(standardize(e, expected_energy(n), std::sqrt(c_star * n)));
  }
  if (!t_grid.empty() && !e.empty()) s.tails = concentration_check(e, n, t_grid, c_star);
  s.split = covariance_split(records, n);
  const KStatistics ki = k_statistics(i_n, false);
  const KStatistics ks = k_statistics(s_n, false);
  const double m = static_cast<double>(i_n.size());
  s.mean_i_over_n = ki.k1;
  s.se_i_over_n = m > 1 ? std::sqrt(ki.k2 / m) : 0.0;
  s.mean_s_over_n = ks.k1;
  s.se_s_over_n = m > 1 ? std::sqrt(ks.k2 / m) : 0.0;
  return s;
}

}  // namespace kostlan
