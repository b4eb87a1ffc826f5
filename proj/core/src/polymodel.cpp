#include "kostlan/polymodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kostlan/error.hpp"

namespace kostlan {
namespace {

constexpr double kTiny = 1e-150;
constexpr double kWindowCut = 1e-20;

cplx unit_power(cplx u, long long k) {
  cplx result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= u;
    u *= u;
    k >>= 1;
  }
  return result;
}

struct Sums {
  cplx s0;
  cplx s1;
  double magnitude = 0.0;
};

// Sums a_j m_j u^j and j a_j m_j u^j over the window where m_j is within
// kWindowCut of its maximum.  m_j is unimodal with mode j0, m_{j0} = exp(log_peak),
// and m_{j+1} = m_j * ratio(j).
template <class Ratio>
Sums windowed_sums(std::span<const cplx> a, cplx u, int j0, double log_peak, Ratio ratio) {
  const int last = static_cast<int>(a.size()) - 1;
  const double peak = std::exp(log_peak);
  const double cut = peak * kWindowCut;
  Sums s;
  const cplx phase0 = unit_power(u, j0);
  {
    const cplx term = a[j0] * (peak * phase0);
    s.s0 += term;
    s.s1 += static_cast<double>(j0) * term;
    s.magnitude += std::abs(a[j0]) * peak;
  }
  double m = peak;
  cplx phase = phase0;
  for (int j = j0 + 1; j <= last; ++j) {
    m *= ratio(j - 1);
    if (m < cut) break;
    phase *= u;
    const cplx term = a[j] * (m * phase);
    s.s0 += term;
    s.s1 += static_cast<double>(j) * term;
    s.magnitude += std::abs(a[j]) * m;
  }
  m = peak;
  phase = phase0;
  const cplx ubar = std::conj(u);
  for (int j = j0 - 1; j >= 0; --j) {
    m /= ratio(j);
    if (m < cut) break;
    phase *= ubar;
    const cplx term = a[j] * (m * phase);
    s.s0 += term;
    s.s1 += static_cast<double>(j) * term;
    s.magnitude += std::abs(a[j]) * m;
  }
  return s;
}

void check_finite(const Evaluation& e) {
  if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag()) ||
      !std::isfinite(e.derivative.real()) || !std::isfinite(e.derivative.imag())) {
    throw NumericRangeError("polynomial evaluation left the double range");
  }
}

}  // namespace

std::vector<double> half_log_binomials(int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  const double lgn = std::lgamma(n + 1.0);
  for (int j = 0; j <= n; ++j) {
    out[j] = 0.5 * (lgn - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0));
  }
  out[0] = 0.0;
  out[n] = 0.0;
  return out;
}

EllipticPolynomial::EllipticPolynomial(std::vector<cplx> raw) : raw_(std::move(raw)) {
  if (raw_.empty()) throw ConfigError("polynomial needs at least one coefficient");
  n_ = static_cast<int>(raw_.size()) - 1;
  log_binom_ = half_log_binomials(n_);
  weighted_.resize(raw_.size());
  for (int j = 0; j <= n_; ++j) weighted_[j] = raw_[j] * std::exp(log_binom_[j]);
  step_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    step_[j] = std::sqrt(static_cast<double>(n_ - j) / static_cast<double>(j + 1));
  }
}

EllipticPolynomial EllipticPolynomial::from_raw(std::vector<cplx> raw) {
  return EllipticPolynomial(std::move(raw));
}

EllipticPolynomial EllipticPolynomial::from_weighted(const std::vector<cplx>& weighted) {
  if (weighted.empty()) throw ConfigError("polynomial needs at least one coefficient");
  const int n = static_cast<int>(weighted.size()) - 1;
  const auto lb = half_log_binomials(n);
  std::vector<cplx> raw(weighted.size());
  for (int j = 0; j <= n; ++j) raw[j] = weighted[j] * std::exp(-lb[j]);
  return EllipticPolynomial(std::move(raw));
}

Evaluation EllipticPolynomial::evaluate(cplx z) const {
  Evaluation e;
  if (n_ == 0) {
    e.value = raw_[0];
    e.derivative = 0.0;
    e.newton = cplx(std::numeric_limits<double>::infinity(), 0.0);
    e.magnitude = std::abs(raw_[0]);
    return e;
  }
  const double t = std::abs(z);
  const double rn = std::sqrt(static_cast<double>(n_));
  if (t < kTiny) {
    e.value = raw_[0] + rn * raw_[1] * z;
    e.derivative = raw_[1];
    e.newton = e.value / (rn * raw_[1]);
    e.magnitude = std::abs(raw_[0]) + rn * std::abs(raw_[1]) * t;
    return e;
  }
  const cplx u = z / t;
  const double t2 = t * t;
  const double p = t2 / (1.0 + t2);
  const int j0 = std::clamp(static_cast<int>(std::floor((n_ + 1) * p)), 0, n_);
  const double l1 = std::log1p(t2);
  const double log_peak = log_binom_[j0] + j0 * std::log(t) - 0.5 * n_ * l1;
  const double* step = step_.data();
  const Sums s = windowed_sums(raw_, u, j0, log_peak, [step, t](int j) { return step[j] * t; });
  e.value = s.s0;
  e.derivative = s.s1 * ((1.0 + t2) / (rn * t2)) * std::conj(z);
  e.newton = z * s.s0 / s.s1;
  e.magnitude = s.magnitude;
  check_finite(e);
  return e;
}

double EllipticPolynomial::log_abs(cplx z) const {
  return std::log(std::abs(normalized(z))) + 0.5 * n_ * std::log1p(std::norm(z));
}

EllipticPolynomial sample_elliptic(int n, ComplexGaussianStream& stream) {
  if (n < 0) throw ConfigError("degree must be nonnegative");
  std::vector<cplx> raw(static_cast<std::size_t>(n) + 1);
  for (auto& a : raw) a = stream.next_complex();
  std::uint32_t resamples = 0;
  while (std::abs(raw.back()) < 1e-300) {
    raw.back() = stream.next_complex();
    ++resamples;
  }
  auto p = EllipticPolynomial::from_raw(std::move(raw));
  p.set_origin({stream.master_seed(), stream.stream_index()});
  p.set_resamples(resamples);
  return p;
}

EllipticPolynomial sample_elliptic(int n, std::uint64_t master_seed, std::uint64_t stream_index) {
  ComplexGaussianStream stream(master_seed, stream_index);
  return sample_elliptic(n, stream);
}

LogKernel log_covariance_kernel(cplx z, cplx w, int n) {
  const cplx x = z * std::conj(w);
  const double a = std::abs(x);
  if (n == 0) return {0.0, 0.0};
  const cplx b = 1.0 + x;
  const double mod = std::abs(b);
  if (mod == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
  // log |1 + x|^2 = log1p(2 Re x + |x|^2), accurate when x is small.
  const double log_mod = a < 0.5 ? 0.5 * std::log1p(2.0 * x.real() + a * a) : std::log(mod);
  const cplx ph = unit_power(b / mod, n);
  return {n * log_mod, std::arg(ph)};
}

cplx covariance_kernel(cplx z, cplx w, int n) {
  if (n == 0) return 1.0;
  const cplx b = 1.0 + z * std::conj(w);
  if (b == 0.0) return 0.0;
  const LogKernel k = log_covariance_kernel(z, w, n);
  return std::exp(k.log_modulus) * unit_power(b / std::abs(b), n);
}

double GefTruncation::tail_variance(int order, double radius) {
  if (radius <= 0.0) return 0.0;
  const double lr2 = 2.0 * std::log(radius);
  const double r2 = radius * radius;
  // Running log-sum-exp over j > order.
  double log_sum = -std::numeric_limits<double>::infinity();
  for (long long j = order + 1;; ++j) {
    const double lt = j * lr2 - std::lgamma(j + 1.0);
    if (lt > log_sum) {
      log_sum = lt + std::log1p(std::exp(log_sum - lt));
    } else {
      log_sum += std::log1p(std::exp(lt - log_sum));
    }
    if (j > r2 + 1 && lt < log_sum - 40.0) break;
    if (j > order + 4LL * kMaxOrder) break;
  }
  return std::exp(log_sum);
}

int GefTruncation::minimum_order(double radius, double tail_tol) {
  if (!(tail_tol > 0.0) || !(radius >= 0.0)) {
    throw ConfigError("entire-function truncation needs radius >= 0 and tail_tol > 0");
  }
  if (tail_variance(kMaxOrder, radius) >= tail_tol) {
    throw ConfigError("entire-function truncation would need order above 1e5");
  }
  int lo = -1;
  int hi = kMaxOrder;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (tail_variance(mid, radius) < tail_tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

GefTruncation::GefTruncation(std::vector<cplx> raw, double radius, double tail_tol)
    : raw_(std::move(raw)), radius_(radius), tail_tol_(tail_tol) {
  if (raw_.empty()) throw ConfigError("truncation needs at least one coefficient");
  if (order() < minimum_order(radius, tail_tol)) {
    throw ConfigError("truncation order too small for the declared radius and tolerance");
  }
  log_weight_.resize(raw_.size());
  for (std::size_t j = 0; j < raw_.size(); ++j) {
    log_weight_[j] = -0.5 * std::lgamma(static_cast<double>(j) + 1.0);
  }
}

Evaluation GefTruncation::evaluate(cplx z) const {
  Evaluation e;
  const double t = std::abs(z);
  if (t < kTiny) {
    e.value = raw_[0] + (order() >= 1 ? raw_[1] * z : cplx{});
    e.derivative = order() >= 1 ? raw_[1] : cplx{};
    e.newton = e.value / e.derivative;
    e.magnitude = std::abs(raw_[0]);
    return e;
  }
  const double t2 = t * t;
  const int m = order();
  const int j0 = std::clamp(static_cast<int>(std::floor(t2)), 0, m);
  const double log_peak = log_weight_[j0] + j0 * std::log(t) - 0.5 * t2;
  const Sums s = windowed_sums(raw_, z / t, j0, log_peak,
                               [t](int j) { return t / std::sqrt(j + 1.0); });
  e.value = s.s0;
  e.derivative = s.s1 / z;
  e.newton = z * s.s0 / s.s1;
  e.magnitude = s.magnitude;
  check_finite(e);
  return e;
}

cplx GefTruncation::normalized(cplx z) const { return evaluate(z).value; }

cplx GefTruncation::dnormalized(cplx z) const { return evaluate(z).derivative; }

cplx GefTruncation::value(cplx z) const {
  return evaluate(z).value * std::exp(0.5 * std::norm(z));
}

GefTruncation sample_gef(int order, double radius, double tail_tol, ComplexGaussianStream& stream) {
  const int m = std::max(order, GefTruncation::minimum_order(radius, tail_tol));
  std::vector<cplx> raw(static_cast<std::size_t>(m) + 1);
  for (auto& a : raw) a = stream.next_complex();
  return GefTruncation(std::move(raw), radius, tail_tol);
}

}  // namespace kostlan
