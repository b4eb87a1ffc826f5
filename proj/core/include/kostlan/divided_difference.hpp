#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace kostlan {

using cplx = std::complex<double>;

/// An analytic function with access to its Taylor coefficients.
struct AnalyticFunction {
  std::function<cplx(cplx)> value;
  /// f^{(k)}(z) / k! for k = 0..order
  std::function<std::vector<cplx>(cplx, int)> taylor;

  static AnalyticFunction polynomial(std::vector<cplx> coeffs);
  static AnalyticFunction exponential(cplx scale = 1.0);
  /// Taylor coefficients from a Cauchy integral on a circle of the given radius.
  static AnalyticFunction entire(std::function<cplx(cplx)> f, double taylor_radius = 0.5);
};

struct DividedDiffContext {
  std::vector<cplx> points;
  /// newton_table[k][i] = f[z_i, ..., z_{i+k}] in the ordering of `points`
  std::vector<std::vector<cplx>> newton_table;
  cplx contour_center;
  double contour_radius = 0.0;

  cplx value() const { return newton_table.back().front(); }
};

/// Points are regrouped so repeats are adjacent; repeats use Taylor coefficients.
DividedDiffContext divided_difference_table(const AnalyticFunction& f, std::vector<cplx> points);
cplx divided_difference(const AnalyticFunction& f, const std::vector<cplx>& points);

struct ContourResult {
  cplx value;
  int nodes = 0;
  double radius = 0.0;
  /// Largest |integrand| on the contour; values far below it are round-off.
  double scale = 0.0;
  bool converged = false;
};

/// (1 / 2 pi i) contour integral of f(s) / prod (s - z_j) by the trapezoid rule,
/// starting at 256 nodes and doubling until successive values agree to
/// 1e-10 relative, or to 1e-14 of the integrand scale.
/// radius <= 0 picks one; contours within 1e-6 of a point are enlarged.
ContourResult divided_difference_contour(const std::function<cplx(cplx)>& f,
                                         const std::vector<cplx>& points, cplx center = 0.0,
                                         double radius = 0.0);

/// M(i, k) = prod_{j < k} (z_i - z_j) for k <= i, so (f(z_i)) = M (f[z_1..z_{k+1}]).
Eigen::MatrixXcd dd_matrix(const std::vector<cplx>& points);

/// Newton coefficients f[z_1], f[z_1, z_2], ... for distinct points.
std::vector<cplx> newton_coefficients(const std::vector<cplx>& values,
                                      const std::vector<cplx>& points);

/// Complete homogeneous symmetric polynomials h_0..h_degree of the points.
std::vector<cplx> complete_homogeneous(const std::vector<cplx>& points, int degree);

/// Cov(g[z_1..z_a], g[z_1..z_b]) for a, b = 1..m and the entire function g.
Eigen::MatrixXcd gef_divided_difference_covariance(const std::vector<cplx>& points);

}  // namespace kostlan
