#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kostlan/error.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/sphere.hpp"
#include "kostlan/stats.hpp"

using namespace kostlan;

namespace {

double binom(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Naive monomial evaluation in long double.
std::complex<long double> naive(const EllipticPolynomial& p, cplx z) {
  std::complex<long double> acc = 0, zl(z.real(), z.imag());
  const auto raw = p.raw_coeffs();
  for (int j = p.degree(); j >= 0; --j) {
    const long double w = std::sqrt(static_cast<long double>(binom(p.degree(), j)));
    acc = acc * zl + std::complex<long double>(raw[j].real(), raw[j].imag()) * w;
  }
  return acc;
}

}  // namespace

TEST(SampleElliptic, DegreeZeroIsConstant) {
  const auto p = sample_elliptic(0, 5, 0);
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p.weighted_coeffs()[0], p.raw_coeffs()[0]);
  EXPECT_EQ(p.normalized({0.7, -3.0}), p.raw_coeffs()[0]);
}

TEST(SampleElliptic, DegreeTwoWeights) {
  const auto p = EllipticPolynomial::from_raw({1.0, 1.0, 1.0});
  EXPECT_NEAR(p.weighted_coeffs()[0].real(), 1.0, 1e-15);
  EXPECT_NEAR(p.weighted_coeffs()[1].real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.weighted_coeffs()[2].real(), 1.0, 1e-15);
}

TEST(SampleElliptic, WeightRatioIsSqrtBinomial) {
  for (int n : {1, 7, 50, 300, 1000}) {
    const auto p = sample_elliptic(n, 11, n);
    EXPECT_EQ(p.leading(), p.weighted_coeffs()[n]);
    for (int j = 0; j <= n; ++j) {
      const double ratio = std::abs(p.weighted_coeffs()[j]) / std::abs(p.raw_coeffs()[j]);
      if (!std::isfinite(ratio)) continue;
      EXPECT_NEAR(std::log(ratio), 0.5 * std::log(binom(n, j)), 1e-12 * (1 + std::log(ratio)));
      EXPECT_NEAR(p.log_binom()[j], 0.5 * std::log(binom(n, j)), 1e-10);
    }
  }
}

TEST(SampleElliptic, CoefficientVariance) {
  const int n = 6, m = 100000;
  std::vector<double> sum(n + 1, 0.0), sum2(n + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto p = sample_elliptic(n, 17, i);
    for (int j = 0; j <= n; ++j) {
      const double v = std::norm(p.weighted_coeffs()[j]);
      sum[j] += v;
      sum2[j] += v * v;
    }
  }
  for (int j = 0; j <= n; ++j) {
    const double mean = sum[j] / m;
    const double se = std::sqrt((sum2[j] / m - mean * mean) / m);
    EXPECT_NEAR(mean, binom(n, j), 5 * se) << "j=" << j;
  }
}

TEST(Evaluate, Examples) {
  const auto p = EllipticPolynomial::from_raw({1.0, 1.0});
  EXPECT_NEAR(std::abs(p.normalized(1.0) - std::sqrt(2.0)), 0.0, 1e-15);
  const auto q = EllipticPolynomial::from_raw({0.0, 1.0});
  EXPECT_NEAR(std::abs(q.dnormalized(0.0) - 1.0), 0.0, 1e-15);
  const auto r = sample_elliptic(40, 2, 2);
  EXPECT_EQ(r.normalized(0.0), r.raw_coeffs()[0]);
  const auto c = EllipticPolynomial::from_raw({{2.0, 1.0}, 0.0});
  EXPECT_EQ(c.dnormalized({0.3, 0.4}), cplx(0.0));
}

TEST(Evaluate, MatchesNaiveEvaluation) {
  ComplexGaussianStream s(23, 0);
  for (int n : {1, 3, 10, 25, 50}) {
    const auto p = sample_elliptic(n, s);
    for (int k = 0; k < 40; ++k) {
      const cplx z = std::polar(2.0 * s.next_uniform(), 2 * std::numbers::pi * s.next_uniform());
      const auto ref = naive(p, z);
      const long double scale = std::pow(1.0L + std::norm(z), n / 2.0L);
      const cplx expected(static_cast<double>(ref.real() / scale),
                          static_cast<double>(ref.imag() / scale));
      EXPECT_LE(std::abs(p.normalized(z) - expected), 1e-9 * std::abs(expected) + 1e-300)
          << "n=" << n;
    }
  }
}

TEST(Evaluate, DerivativeByCentralDifferences) {
  // Df = f' / (sqrt(n) (1 + |z|^2)^{n/2 - 1}); compare against differences of f.
  const int n = 12;
  const auto p = sample_elliptic(n, 31, 0);
  const cplx z(0.4, -0.3);
  const double norm = std::sqrt(double(n)) * std::pow(1 + std::norm(z), n / 2.0 - 1);
  auto f = [&](cplx x) {
    const auto v = naive(p, x);
    return cplx(double(v.real()), double(v.imag()));
  };
  const cplx exact = p.dnormalized(z);
  double prev_err = 0.0;
  std::vector<double> orders;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const cplx fd = (f(z + h) - f(z - h)) / (2 * h) / norm;
    const double err = std::abs(fd - exact);
    if (prev_err > 0) orders.push_back(std::log10(prev_err / err));
    prev_err = err;
  }
  for (double o : orders) EXPECT_GE(o, 1.9);
}

TEST(Evaluate, NormalizedVarianceIsOne) {
  const int m = 100000;
  for (cplx z : {cplx(0.0), cplx(0.5, 0.5), cplx(3.0, -1.0)}) {
    double s = 0, s2 = 0, d = 0, d2 = 0;
    for (int i = 0; i < m; ++i) {
      const auto p = sample_elliptic(20, 77, i);
      const auto e = p.evaluate(z);
      const double v = std::norm(e.value), w = std::norm(e.derivative);
      s += v;
      s2 += v * v;
      d += w;
      d2 += w * w;
    }
    const double mean = s / m, se = std::sqrt((s2 / m - mean * mean) / m);
    EXPECT_NEAR(mean, 1.0, 5 * se);
    if (z == cplx(0.0)) {
      const double md = d / m, sd = std::sqrt((d2 / m - md * md) / m);
      EXPECT_NEAR(md, 1.0, 5 * sd);
    }
  }
}

TEST(Evaluate, HighDegreeLargeArgumentStaysFinite) {
  const auto p = sample_elliptic(10000, 3, 0);
  for (double r : {1e-3, 1.0, 10.0, 1e3}) {
    const auto e = p.evaluate(std::polar(r, 0.3));
    EXPECT_TRUE(std::isfinite(e.value.real()) && std::isfinite(e.value.imag()));
    EXPECT_TRUE(std::isfinite(e.derivative.real()));
    EXPECT_TRUE(std::isfinite(p.log_abs(std::polar(r, 0.3))));
  }
}

TEST(Evaluate, RecenteringPreservesLaw) {
  // |f(z)| and |f(tau z)| have the same law.
  ComplexGaussianStream s(5, 5);
  const auto tau = random_isometry(s);
  const cplx z(0.2, 0.9);
  const cplx tz = apply_isometry(tau, ExtendedComplex(z)).value();
  std::vector<double> a, b;
  for (int i = 0; i < 10000; ++i) {
    a.push_back(std::abs(sample_elliptic(15, 101, i).normalized(z)));
    b.push_back(std::abs(sample_elliptic(15, 202, i).normalized(tz)));
  }
  EXPECT_GT(two_sample_ks(a, b).p_value, 0.01);
}

TEST(CovarianceKernel, Examples) {
  EXPECT_EQ(covariance_kernel(0.0, {3.0, 2.0}, 17), cplx(1.0));
  EXPECT_NEAR(std::abs(covariance_kernel(1.0, 1.0, 2) - 4.0), 0.0, 1e-12);
  const cplx z(0.3, 0.5), w(-0.2, 0.7);
  const cplx k = covariance_kernel(z, w, 9);
  const cplx direct = std::pow(1.0 + z * std::conj(w), 9);
  EXPECT_LE(std::abs(k - direct), 1e-12 * std::abs(direct));
  const auto lk = log_covariance_kernel(z, w, 2000);
  EXPECT_NEAR(lk.log_modulus, 2000 * std::log(std::abs(1.0 + z * std::conj(w))), 1e-9);
}

TEST(CovarianceKernel, ConvergesToExponential) {
  const cplx z(0.8, -0.4), w(-0.5, 0.6);
  const cplx target = std::exp(z * std::conj(w));
  double prev = 1e9;
  for (int n : {10, 100, 1000, 10000}) {
    const cplx k = covariance_kernel(z / std::sqrt(double(n)), w / std::sqrt(double(n)), n);
    const double err = std::abs(k - target);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Gef, MinimumOrder) {
  const int m = GefTruncation::minimum_order(3.0, 1e-12);
  double tail = 0, term_log;
  for (int j = m + 1; j < m + 400; ++j) {
    term_log = j * std::log(9.0) - std::lgamma(j + 1.0);
    tail += std::exp(term_log);
  }
  EXPECT_LT(tail, 1e-12);
  double tail_before = 0;
  for (int j = m; j < m + 400; ++j) tail_before += std::exp(j * std::log(9.0) - std::lgamma(j + 1.0));
  EXPECT_GE(tail_before, 1e-12);
  EXPECT_THROW(GefTruncation::minimum_order(1e4, 1e-12), ConfigError);
}

TEST(Gef, CovarianceMatchesExponential) {
  const cplx z(1.2, 0.4), w(-0.5, 1.1);
  const int m = 100000;
  cplx sum = 0;
  double s2 = 0;
  for (int i = 0; i < m; ++i) {
    ComplexGaussianStream s(44, i);
    const auto g = sample_gef(0, 2.0, 1e-12, s);
    const cplx v = g.value(z) * std::conj(g.value(w));
    sum += v;
    s2 += std::norm(v);
  }
  const cplx mean = sum / double(m);
  const double se = std::sqrt((s2 / m - std::norm(mean)) / m);
  EXPECT_LE(std::abs(mean - std::exp(z * std::conj(w))), 5 * se);
}

TEST(Gef, ValueAtOriginIsFirstCoefficient) {
  ComplexGaussianStream s(9, 9);
  const auto g = sample_gef(30, 1.0, 1e-12, s);
  EXPECT_EQ(g.value(0.0), g.raw_coeffs()[0]);
  EXPECT_GE(g.order(), GefTruncation::minimum_order(1.0, 1e-12));
}
