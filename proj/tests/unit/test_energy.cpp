#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kostlan/energy.hpp"
#include "kostlan/error.hpp"
#include "kostlan/quadrature.hpp"
#include "kostlan/special.hpp"

using namespace kostlan;

TEST(PairwiseEnergy, Examples) {
  EXPECT_EQ(pairwise_energy(std::vector<cplx>{0.5}), 0.0);
  EXPECT_NEAR(pairwise_energy(std::vector<cplx>{1.0, -1.0}), -2 * std::log(2.0), 1e-15);
  const auto eq = SphericalConfiguration::from_cartesian(
      {{1, 0, 0}, {-0.5, std::sqrt(3.0) / 2, 0}, {-0.5, -std::sqrt(3.0) / 2, 0}},
      ConfigSource::explicit_points);
  EXPECT_NEAR(pairwise_energy(eq), -3 * std::log(3.0), 1e-14);
}

TEST(PairwiseEnergy, CoincidentPointsNamed) {
  try {
    pairwise_energy(std::vector<cplx>{0.0, 1.0, 0.5, 1.0});
    FAIL();
  } catch (const CoincidentPointsError& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 3u);
  }
}

TEST(PairwiseEnergy, IndependentOfThreads) {
  ComplexGaussianStream s(1, 0);
  const auto cfg = sample_uniform_configuration(700, s);
  const double one = pairwise_energy(cfg, 1);
  EXPECT_EQ(pairwise_energy(cfg, 3), one);
  EXPECT_EQ(pairwise_energy(cfg, 8), one);
}

TEST(ExpectedEnergy, Examples) {
  EXPECT_NEAR(expected_energy(1), 0.0, 1e-15);
  EXPECT_NEAR(expected_energy(2), 1 - 3 * std::log(2.0), 1e-14);
}

TEST(ReferenceCurves, Ordering) {
  EXPECT_NEAR(kCMinLower, -0.0569, 0);
  EXPECT_NEAR(c_min_upper(), -0.0556, 1e-4);
  EXPECT_LE(kCMinLower, c_min_upper());
  for (int n = 2; n <= 2000; n += 7) {
    const auto r = reference_curves(n);
    EXPECT_LE(r.min_lower, r.min_upper);
    EXPECT_GT(r.elliptic_mean, r.min_upper);
    EXPECT_EQ(r.elliptic_mean, expected_energy(n));
    if (n >= 3) {
      EXPECT_GT(r.uniform_mean, r.elliptic_mean);
    }
  }
}

TEST(ReferenceCurves, UniformPointsMean) {
  const int n = 30, m = 4000;
  std::vector<double> e;
  for (int i = 0; i < m; ++i) {
    ComplexGaussianStream s(2, i);
    e.push_back(pairwise_energy(sample_uniform_configuration(n, s)));
  }
  double mean = 0, var = 0;
  for (double x : e) mean += x / m;
  for (double x : e) var += (x - mean) * (x - mean) / (m - 1);
  EXPECT_NEAR(mean, reference_curves(n).uniform_mean, 4 * std::sqrt(var / m));
}

TEST(Jensen, HandExamples) {
  const auto p = EllipticPolynomial::from_raw({0.0, 1.0});
  const auto rs = find_roots(p);
  EXPECT_NEAR(i_n_from_roots(p, rs), -0.5, 1e-15);
  EXPECT_NEAR(s_n_from_roots(p, rs), 0.0, 1e-15);
  const auto q = EllipticPolynomial::from_weighted({-1.0, 0.0, 1.0});
  EXPECT_LE(std::abs(decomposition_check(q, find_roots(q)).identity_residual), 1e-10);
}

TEST(Jensen, MatchesQuadrature) {
  // n int log|f_hat| dmu over the sphere, u = cos(polar angle), mu = du dphi / (4 pi).
  const int n = 20;
  const auto p = sample_elliptic(n, 3, 0);
  const auto rs = find_roots(p);
  QuadOptions inner;
  inner.abs_tol = 1e-9;
  inner.rel_tol = 1e-9;
  inner.max_intervals = 2000;
  auto row = [&](double u) {
    const double r = std::sqrt((1 + u) / (1 - u));
    auto g = [&](double phi) {
      const cplx z = std::polar(r, phi);
      return p.log_abs(z) - 0.5 * n * std::log1p(r * r);
    };
    return integrate(g, 0.0, 2 * std::numbers::pi, inner).value;
  };
  QuadOptions outer = inner;
  outer.abs_tol = 1e-7;
  outer.rel_tol = 1e-7;
  const double total = integrate(row, -1.0, 1.0, outer).value / (4 * std::numbers::pi);
  const double exact = i_n_from_roots(p, rs);
  EXPECT_NEAR(n * total, exact, 1e-4 * std::abs(exact));
}

TEST(Decomposition, ResidualSmall) {
  ComplexGaussianStream s(4, 0);
  for (int n : {10, 100, 300}) {
    const auto p = sample_elliptic(n, s);
    const auto b = decomposition_check(p, find_roots(p));
    EXPECT_LE(std::abs(b.identity_residual), 1e-7 * n * n);
  }
}

TEST(Decomposition, InvariantUnderTransform) {
  ComplexGaussianStream s(4, 1);
  for (int n : {10, 30}) {
    const auto p = sample_elliptic(n, s);
    const auto rs = find_roots(p);
    const auto b = decomposition_check(p, rs);
    const auto t = random_isometry(s);
    const auto q = transform_polynomial(p, t);
    const auto rq = find_roots(q);
    const auto bq = decomposition_check(q, rq);
    EXPECT_LE(std::abs(bq.identity_residual), 1e-7 * n * n);
    EXPECT_NEAR(bq.e_n, b.e_n, 1e-8 * n * n);
    EXPECT_NEAR(s_n_from_roots(q, rq), s_n_from_roots(p, rs), 1e-8);
  }
}

TEST(Decomposition, HighDegree) {
  const auto p = sample_elliptic(1000, 5, 0);
  const auto b = decomposition_check(p, find_roots(p));
  EXPECT_LE(std::abs(b.identity_residual), 1e-7 * 1000 * 1000);
  EXPECT_TRUE(std::isfinite(b.i_n) && std::isfinite(b.s_n));
}
