#pragma once

#include <vector>

#include "kostlan/polymodel.hpp"
#include "kostlan/roots.hpp"
#include "kostlan/sphere.hpp"

namespace kostlan {

inline constexpr double kCoincidenceThreshold = 1e-14;

/// -sum_{i != j} log d(x_i, x_j).  Rows are summed in fixed blocks and the
/// blocks reduced in index order, so the result does not depend on `threads`.
double pairwise_energy(const SphericalConfiguration& cfg, int threads = 1);
double pairwise_energy(const std::vector<cplx>& points, int threads = 1);

/// (1/2 - log 2) n^2 - (1/2) n log n - (1/2 - log 2) n
double expected_energy(int n);

struct ReferenceCurves {
  double min_lower;
  double min_upper;
  double uniform_mean;
  double elliptic_mean;
};

inline constexpr double kCMinLower = -0.0569;
/// 2 log 2 + (1/2) log(2/3) + 3 log(sqrt(pi) / Gamma(1/3))
double c_min_upper();
ReferenceCurves reference_curves(int n);

/// n (log|a_n| + sum_j (1/2) log(1 + |z_j|^2) - n/2)
double i_n_from_roots(const EllipticPolynomial& p, const RootSet& rs);
/// sum_j log |Df(z_j)|
double s_n_from_roots(const EllipticPolynomial& p, const RootSet& rs);

struct EnergyBreakdown {
  int n = 0;
  double e_n = 0.0;
  double i_n = 0.0;
  double s_n = 0.0;
  double identity_residual = 0.0;
};

EnergyBreakdown decomposition_check(const EllipticPolynomial& p, const RootSet& rs);

/// Coefficients of (conj(alpha) - conj(beta) z)^n f(tau z), whose roots are
/// tau^{-1} applied to the roots of f.  The expansion runs in double and loses
/// accuracy roughly like 2^n eps; use it for n up to about 50.
EllipticPolynomial transform_polynomial(const EllipticPolynomial& p, const Isometry& t);

}  // namespace kostlan
