#include <gtest/gtest.h>

#include <cmath>

#include "kostlan/quadrature.hpp"
#include "kostlan/special.hpp"

using namespace kostlan;

TEST(Special, Zeta3) {
  const auto z = zeta3_series();
  EXPECT_NEAR(z.value, kZeta3, 1e-14);
  EXPECT_LT(z.error, 1e-14);
}

TEST(Special, Dilog) {
  EXPECT_EQ(dilog(0.0), 0.0);
  EXPECT_NEAR(dilog(1.0), kPi * kPi / 6, 1e-15);
  EXPECT_NEAR(dilog(0.5), kPi * kPi / 12 - 0.5 * std::log(2.0) * std::log(2.0), 1e-15);
  for (double x : {0.1, 0.3, 0.7, 0.95}) {
    double s = 0, p = 1;
    for (int k = 1; k < 2000; ++k) {
      p *= x;
      s += p / (double(k) * k);
    }
    EXPECT_NEAR(dilog(x), s, 1e-14);
  }
}

TEST(Special, PsiSeries) {
  EXPECT_EQ(psi_series(0.0).value, 0.0);
  EXPECT_NEAR(psi_series(1.0).value, 2 - kPi * kPi / 6, 1e-14);
  double direct = 0;
  for (int j = 2; j < 200000; ++j) direct += 1.0 / (double(j) * j * (j - 1));
  EXPECT_NEAR(psi_series(1.0).value, direct, 1e-10);
  for (double x : {0.2, 0.5, 0.8}) {
    double s = 0, p = x;
    for (int j = 2; j < 400; ++j) {
      p *= x;
      s += p / (double(j) * j * (j - 1));
    }
    EXPECT_NEAR(psi_series(x).value, s, 1e-15);
  }
}

TEST(Special, BetaSquareSeries) {
  for (double x : {0.0, 0.3, 0.6, 1.0}) {
    double s = 0;
    for (int j = 2; j < 100000; ++j) s += std::pow(x, j) / (double(j) * j * (j - 1) * (j - 1));
    EXPECT_NEAR(beta_square_series(x).value, s, 1e-12);
  }
}

TEST(Special, LaguerreOrthonormal) {
  for (int a = 0; a <= 6; ++a) {
    for (int b = a; b <= 6; ++b) {
      QuadOptions o;
      o.abs_tol = 1e-13;
      const auto q = integrate(
          [&](double x) { return laguerre(a, x) * laguerre(b, x) * std::exp(-x); },
          {0.0, 1.0, 5.0, 20.0, 60.0, 120.0}, o);
      EXPECT_NEAR(q.value, a == b ? 1.0 : 0.0, 1e-10) << a << "," << b;
    }
  }
  const auto all = laguerre_all(5, 1.7);
  for (int j = 0; j <= 5; ++j) EXPECT_DOUBLE_EQ(all[j], laguerre(j, 1.7));
  EXPECT_NEAR(laguerre(2, 1.0), -0.5, 1e-15);
}

TEST(Special, Normal) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_sf(1.959963984540054), 0.025, 1e-15);
  EXPECT_NEAR(normal_sf(-3) + normal_cdf(-3), 1.0, 1e-15);
}

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value, 2.0, 1e-13);
  const auto q = integrate([](double x) { return std::log(x); }, 0.0, 1.0);
  EXPECT_NEAR(q.value, -1.0, 1e-11);
  EXPECT_TRUE(q.converged);
  EXPECT_NEAR(integrate([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0).value, 2.0, 1e-8);
}
