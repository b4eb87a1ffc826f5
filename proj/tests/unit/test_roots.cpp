#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kostlan/energy.hpp"
#include "kostlan/roots.hpp"
#include "kostlan/sphere.hpp"

using namespace kostlan;

namespace {

EllipticPolynomial z2_minus_1() { return EllipticPolynomial::from_weighted({-1.0, 0.0, 1.0}); }

}  // namespace

TEST(FindRoots, Linear) {
  const auto p = EllipticPolynomial::from_raw({{0.3, -1.2}, {2.0, 0.5}});
  const auto rs = find_roots(p);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_LE(std::abs(rs.roots[0] - (-cplx(0.3, -1.2) / cplx(2.0, 0.5))), 1e-15);
}

TEST(FindRoots, Quadratic) {
  const auto rs = find_roots(z2_minus_1());
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_NEAR(std::abs(rs.roots[0] - (-1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(rs.roots[1] - 1.0), 0.0, 1e-12);
}

TEST(FindRoots, ZeroLowCoefficients) {
  const auto p = EllipticPolynomial::from_weighted({0.0, 0.0, -4.0, 0.0, 1.0});
  const auto rs = find_roots(p);
  ASSERT_EQ(rs.size(), 4u);
  int zeros = 0;
  for (cplx r : rs.roots) zeros += std::abs(r) == 0.0;
  EXPECT_EQ(zeros, 2);
  EXPECT_LE(rs.max_residual(), 1e-12);
}

TEST(FindRoots, RandomResidualsAndOrdering) {
  const auto p = sample_elliptic(200, 8, 0);
  const auto rs = find_roots(p);
  ASSERT_EQ(rs.size(), 200u);
  EXPECT_LE(rs.max_residual(), 1e-10);
  for (std::size_t i = 0; i < rs.size(); ++i)
    EXPECT_NEAR(rs.residuals[i], std::abs(p.normalized(rs.roots[i])), 1e-15);
  EXPECT_TRUE(std::is_sorted(rs.roots.begin(), rs.roots.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  }));
  const auto again = find_roots(p);
  EXPECT_EQ(again.roots, rs.roots);
}

TEST(FindRoots, CountEqualsDegree) {
  for (int n : {10, 100, 1000}) {
    const int samples = n == 1000 ? 200 : 1000;
    for (int i = 0; i < samples; ++i) {
      const auto p = sample_elliptic(n, 100 + n, i);
      const auto rs = find_roots(p);
      ASSERT_EQ(static_cast<int>(rs.size()), n);
      ASSERT_LE(rs.max_residual(), 1e-10) << "n=" << n << " i=" << i;
    }
  }
}

TEST(RefineRoot, Examples) {
  const auto p = z2_minus_1();
  EXPECT_NEAR(std::abs(refine_root(p, 1.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(refine_root(p, 0.9) - 1.0), 0.0, 1e-14);
}

TEST(RefineRoot, ImprovesPerturbedRoot) {
  const auto p = sample_elliptic(100, 12, 0);
  const auto rs = find_roots(p);
  for (int i = 0; i < 100; i += 9) {
    const cplx start = rs.roots[i] + 1e-6;
    const cplx refined = refine_root(p, start);
    EXPECT_LE(std::abs(p.normalized(refined)), 1e-3 * std::abs(p.normalized(start)));
  }
}

TEST(ValidateRoots, Quadratic) {
  const auto p = z2_minus_1();
  const auto d = validate_roots(p, find_roots(p));
  EXPECT_TRUE(d.passed) << d.message;
  EXPECT_LE(d.sum_error, 1e-14);
  EXPECT_LE(d.log_product_error, 1e-14);
}

TEST(ValidateRoots, RandomVieta) {
  const auto p = sample_elliptic(100, 13, 0);
  const auto rs = find_roots(p);
  const auto d = validate_roots(p, rs);
  EXPECT_TRUE(d.passed) << d.message;
  EXPECT_LE(d.sum_error, 1e-8 * d.sum_scale);
  EXPECT_LE(d.log_product_error, 1e-8 * 100);
  auto broken = rs;
  broken.roots[0] += 0.01;
  EXPECT_FALSE(validate_roots(p, broken).passed);
}

TEST(Roots, CapFractionMatchesMu) {
  // Cap around the north-east of the sphere with chordal radius r has mu-mass r^2 / 4.
  const auto centre = project(ExtendedComplex({0.6, 0.8}));
  const double r = 0.7;
  const int n = 100, samples = 500;
  long inside = 0;
  for (int i = 0; i < samples; ++i) {
    for (cplx z : find_roots(sample_elliptic(n, 14, i)).roots)
      inside += chordal(project(z).cartesian, centre.cartesian) < r;
  }
  const double total = double(n) * samples, p = r * r / 4;
  EXPECT_NEAR(inside / total, p, 5 * std::sqrt(p * (1 - p) / total));
}

TEST(Roots, TransformedPolynomialRootsAreMapped) {
  ComplexGaussianStream s(15, 0);
  for (int n : {5, 20, 60}) {
    const auto p = sample_elliptic(n, s);
    const auto t = random_isometry(s);
    const auto q = transform_polynomial(p, t);
    const auto rp = find_roots(p).roots;
    const auto rq = find_roots(q).roots;
    for (cplx z : rp) {
      const auto mapped = apply_isometry(t.inverse(), ExtendedComplex(z));
      double best = 3.0;
      for (cplx w : rq) best = std::min(best, spherical_distance(mapped, ExtendedComplex(w)));
      EXPECT_LE(best, 1e-8) << "n=" << n;
    }
  }
}
