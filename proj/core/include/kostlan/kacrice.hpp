#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kostlan/rng.hpp"

namespace kostlan {

using cplx = std::complex<double>;

/// Which Gaussian field the covariance entries describe.
enum class Field { elliptic, gef };

/// Normalized second moments of the field and its derivative at x, y:
/// ff = E[f(x) conj f(y)], df = E[Df(x) conj f(y)], fd = E[f(x) conj Df(y)],
/// dd = E[Df(x) conj Df(y)].
struct CovEntries {
  cplx ff, df, fd, dd;
};
CovEntries normalized_covariance(cplx x, cplx y, int n);
CovEntries gef_covariance(cplx x, cplx y);

struct DensityQuery {
  int ell = 0;
  int m = 0;
  std::vector<int> powers;    // p_1..p_m
  std::vector<cplx> points;   // w_1..w_ell, z_1..z_m

  std::vector<cplx> w_points() const;
  std::vector<cplx> z_points() const;
  /// Throws ConfigError on shape mismatch or repeated points.
  void validate() const;
};

struct ConditionedGaussian {
  /// Variables ordered (f(z_1..z_m), Df(z_1..z_m), f(w_1..w_ell)).
  Eigen::MatrixXcd full_cov;
  /// Law of (Df(z_1..z_m), f(w_1..w_ell)) given f(z_1) = .. = f(z_m) = 0.
  Eigen::MatrixXcd conditioned_cov;
  double log_det_condition = 0.0;
  double condition_number = 1.0;
};

/// n is ignored for Field::gef.
ConditionedGaussian conditioned_covariance(const DensityQuery& q, int n,
                                           Field field = Field::elliptic);

/// One-point intensity with respect to mu: n.
double rho_1(cplx z, int n);

/// Two-point intensity with respect to mu x mu.  Throws DegenerateCovarianceError
/// when d(z, w) sqrt(n) < 1e-3.
double rho_2(cplx z, cplx w, int n);
/// Two-point intensity with respect to Lebesgue measure on C x C.
double rho_2_lebesgue(cplx z, cplx w, int n);

/// rho_2 / n^2 - 1 at spherical distance d, as log |.| with its sign,
/// from a closed form that stays accurate where the difference underflows.
struct LogGap {
  double log_abs;
  int sign;
};
LogGap log_clustering_gap(int n, double d);
/// rho_2 / n^2 at spherical distance d from the same closed form.
double rho_2_by_distance(int n, double d);

struct IntensityEstimate {
  double value = 0.0;
  double se = 0.0;
  /// n^m, the factor converting the normalized value into an intensity
  double scale = 1.0;
  int samples = 0;
  bool partial = false;
};

/// Monte Carlo over the conditioned Gaussian of
/// prod_t log|eta'_t| prod_j |eta_j|^2 log^{p_j}|eta_j|, divided by the
/// determinant of the conditioning block.
IntensityEstimate rho_lmp_mc(const DensityQuery& q, int n, int samples, std::uint64_t seed,
                             double target_se = 0.0, Field field = Field::elliptic);

struct ClusteringReport {
  int n = 0;
  std::vector<double> distances;
  std::vector<double> x;         // n d^2
  std::vector<double> log_gap;   // log(|rho_2 - n^2| / n^2)
  double slope = 0.0;
  double intercept = 0.0;
  /// Largest |generic - closed form| relative gap over rotated pairs.
  double family_max_discrepancy = 0.0;
  double max_gap_over_family = 0.0;
};

/// Gap evaluation on d in [d_min_factor / sqrt(n), min(d_max_factor / sqrt(n), d_cap)].
ClusteringReport clustering_gap(int n, int grid_points = 40, double d_min_factor = 5.0,
                                double d_max_factor = 50.0, double d_cap = 1.9,
                                int family_size = 8, std::uint64_t seed = 1);

/// Integral of rho_2 over pairs with spherical distance in [d1, d2] against
/// mu x mu; over [0, 2] this is n (n - 1).
double rho_2_pair_integral(int n, double d1, double d2, double tol = 1e-10);

struct AnnulusCount {
  double d1, d2;
  double expected;
  double observed_mean;
  double observed_se;
};

/// Ordered root pairs at spherical distance in [d1, d2], averaged over samples.
std::vector<AnnulusCount> annulus_pair_counts(int n, int samples, std::uint64_t seed,
                                              const std::vector<std::pair<double, double>>& bands,
                                              int threads = 1);

/// Smallest eigenvalue of Cov(g[z_1], .., g[z_1..z_m]) over random sets in |z| <= radius.
double min_dd_covariance_eigenvalue(int m, int trials, double radius, std::uint64_t seed);

}  // namespace kostlan
