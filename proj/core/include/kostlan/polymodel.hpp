#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kostlan/rng.hpp"

namespace kostlan {

using cplx = std::complex<double>;

/// Identifies the random stream a sampled object came from, for replay.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Value and normalized derivative of a polynomial at one point, plus the
/// Newton ratio f/f' computed without forming either factor.
struct Evaluation {
  cplx value;
  cplx derivative;
  cplx newton;
  /// Sum of |terms| in the normalized expansion, a scale for rounding error.
  double magnitude = 0.0;
};

/// 1/2 * log binom(n, j) for j = 0..n.
std::vector<double> half_log_binomials(int n);

/// f(z) = sum_j a_j sqrt(binom(n, j)) z^j.
class EllipticPolynomial {
 public:
  /// Build from the raw Gaussian coefficients a_0..a_n.
  static EllipticPolynomial from_raw(std::vector<cplx> raw);
  /// Build from the weighted coefficients c_j = a_j sqrt(binom(n, j)).
  static EllipticPolynomial from_weighted(const std::vector<cplx>& weighted);

  int degree() const noexcept { return n_; }
  std::span<const cplx> raw_coeffs() const noexcept { return raw_; }
  /// May contain infinities for n beyond about 2000; evaluation never uses them.
  std::span<const cplx> weighted_coeffs() const noexcept { return weighted_; }
  std::span<const double> log_binom() const noexcept { return log_binom_; }
  cplx leading() const noexcept { return raw_.back(); }

  const std::optional<StreamKey>& origin() const noexcept { return origin_; }
  void set_origin(StreamKey key) { origin_ = key; }
  std::uint32_t resamples() const noexcept { return resamples_; }
  void set_resamples(std::uint32_t r) noexcept { resamples_ = r; }

  Evaluation evaluate(cplx z) const;
  /// f(z) / (1 + |z|^2)^{n/2}
  cplx normalized(cplx z) const { return evaluate(z).value; }
  /// f'(z) / (sqrt(n) (1 + |z|^2)^{n/2 - 1})
  cplx dnormalized(cplx z) const { return evaluate(z).derivative; }
  /// log |f(z)|, finite unless z is an exact zero.
  double log_abs(cplx z) const;

 private:
  explicit EllipticPolynomial(std::vector<cplx> raw);

  int n_ = 0;
  std::vector<cplx> raw_;
  std::vector<cplx> weighted_;
  std::vector<double> log_binom_;
  // sqrt((n - j) / (j + 1)), the ratio of consecutive binomial weights.
  std::vector<double> step_;
  std::optional<StreamKey> origin_;
  std::uint32_t resamples_ = 0;
};

/// Degree-n polynomial with i.i.d. standard complex Gaussian a_j.
EllipticPolynomial sample_elliptic(int n, ComplexGaussianStream& stream);
EllipticPolynomial sample_elliptic(int n, std::uint64_t master_seed, std::uint64_t stream_index);

/// (1 + z conj(w))^n, with the modulus formed in log space.
cplx covariance_kernel(cplx z, cplx w, int n);
/// log |1 + z conj(w)|^n and the argument of (1 + z conj(w))^n.
struct LogKernel {
  double log_modulus;
  double argument;
};
LogKernel log_covariance_kernel(cplx z, cplx w, int n);

/// Truncated Gaussian entire function g(z) = sum_{j <= M} a_j z^j / sqrt(j!).
class GefTruncation {
 public:
  static constexpr int kMaxOrder = 100000;

  /// Smallest M with sum_{j > M} radius^{2j}/j! < tail_tol.
  static int minimum_order(double radius, double tail_tol);
  static double tail_variance(int order, double radius);

  GefTruncation(std::vector<cplx> raw, double radius, double tail_tol);

  int order() const noexcept { return static_cast<int>(raw_.size()) - 1; }
  double radius() const noexcept { return radius_; }
  double tail_tol() const noexcept { return tail_tol_; }
  std::span<const cplx> raw_coeffs() const noexcept { return raw_; }
  /// -1/2 log j!
  std::span<const double> log_weights() const noexcept { return log_weight_; }

  cplx value(cplx z) const;
  /// e^{-|z|^2/2} g(z)
  cplx normalized(cplx z) const;
  /// e^{-|z|^2/2} g'(z)
  cplx dnormalized(cplx z) const;

 private:
  Evaluation evaluate(cplx z) const;

  std::vector<cplx> raw_;
  std::vector<double> log_weight_;
  double radius_;
  double tail_tol_;
};

GefTruncation sample_gef(int order, double radius, double tail_tol, ComplexGaussianStream& stream);

}  // namespace kostlan
