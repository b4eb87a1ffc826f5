#include "kostlan/kacrice.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "kostlan/divided_difference.hpp"
#include "kostlan/error.hpp"
#include "kostlan/parallel.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/quadrature.hpp"
#include "kostlan/roots.hpp"
#include "kostlan/sphere.hpp"

namespace kostlan {
namespace {

cplx unit_power(cplx u, int k) {
  cplx r{1.0, 0.0};
  while (k > 0) {
    if (k & 1) r *= u;
    u *= u;
    k >>= 1;
  }
  return r;
}

// B^k e^c with B = 1 + x conj(y), formed in log space.
cplx scaled_power(cplx x, cplx y, int k, double c) {
  const cplx xy = x * std::conj(y);
  const cplx b = 1.0 + xy;
  if (k == 0) return std::exp(c);
  const double mod = std::abs(b);
  if (mod == 0.0) return 0.0;
  const double a = std::abs(xy);
  const double log_mod = a < 0.5 ? 0.5 * std::log1p(2.0 * xy.real() + a * a) : std::log(mod);
  return std::exp(k * log_mod + c) * unit_power(b / mod, k);
}

struct Variable {
  cplx point;
  bool derivative;
};

cplx entry(const CovEntries& c, bool dx, bool dy) {
  if (!dx && !dy) return c.ff;
  if (dx && !dy) return c.df;
  if (!dx && dy) return c.fd;
  return c.dd;
}

}  // namespace

CovEntries normalized_covariance(cplx x, cplx y, int n) {
  const double lx = std::log1p(std::norm(x));
  const double ly = std::log1p(std::norm(y));
  const double hn = 0.5 * n;
  const double rn = std::sqrt(static_cast<double>(n));
  CovEntries e;
  e.ff = scaled_power(x, y, n, -hn * (lx + ly));
  if (n == 0) {
    e.df = e.fd = e.dd = 0.0;
    return e;
  }
  e.df = rn * std::conj(y) * scaled_power(x, y, n - 1, -(hn - 1.0) * lx - hn * ly);
  e.fd = rn * x * scaled_power(x, y, n - 1, -hn * lx - (hn - 1.0) * ly);
  if (n == 1) {
    e.dd = std::exp(0.5 * (lx + ly));
  } else {
    e.dd = (1.0 + static_cast<double>(n) * x * std::conj(y)) * scaled_power(x, y, n - 2, -(hn - 1.0) * (lx + ly));
  }
  return e;
}

CovEntries gef_covariance(cplx x, cplx y) {
  const cplx xy = x * std::conj(y);
  const cplx e = std::exp(xy - 0.5 * std::norm(x) - 0.5 * std::norm(y));
  return {e, std::conj(y) * e, x * e, (1.0 + xy) * e};
}

std::vector<cplx> DensityQuery::w_points() const {
  return {points.begin(), points.begin() + ell};
}

std::vector<cplx> DensityQuery::z_points() const {
  return {points.begin() + ell, points.end()};
}

void DensityQuery::validate() const {
  if (ell < 0 || m < 0 || ell + m < 1) throw ConfigError("density query needs ell + m >= 1");
  if (static_cast<int>(points.size()) != ell + m) {
    throw ConfigError("density query needs ell + m points");
  }
  if (!powers.empty() && static_cast<int>(powers.size()) != m) {
    throw ConfigError("density query needs one power per z point");
  }
  for (int p : powers) {
    if (p < 0) throw ConfigError("density query powers must be nonnegative");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw ConfigError("density query points must be distinct");
    }
  }
}

ConditionedGaussian conditioned_covariance(const DensityQuery& q, int n, Field field) {
  q.validate();
  const auto zs = q.z_points();
  const auto ws = q.w_points();
  const int m = q.m;
  std::vector<Variable> vars;
  for (const cplx& z : zs) vars.push_back({z, false});
  for (const cplx& z : zs) vars.push_back({z, true});
  for (const cplx& w : ws) vars.push_back({w, false});
  const int total = static_cast<int>(vars.size());
  ConditionedGaussian g;
  g.full_cov.resize(total, total);
  for (int a = 0; a < total; ++a) {
    for (int b = 0; b < total; ++b) {
      const CovEntries c = field == Field::gef ? gef_covariance(vars[a].point, vars[b].point)
                                               : normalized_covariance(vars[a].point, vars[b].point, n);
      g.full_cov(a, b) = entry(c, vars[a].derivative, vars[b].derivative);
    }
  }
  if (m == 0) {
    g.conditioned_cov = g.full_cov;
    return g;
  }
  const Eigen::MatrixXcd s11 = g.full_cov.topLeftCorner(m, m);
  const Eigen::MatrixXcd s21 = g.full_cov.bottomLeftCorner(total - m, m);
  const Eigen::MatrixXcd s22 = g.full_cov.bottomRightCorner(total - m, total - m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(s11);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 1e-13 * hi)) {
    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      for (std::size_t j = i + 1; j < zs.size(); ++j) {
        const double d = spherical_distance(zs[i], zs[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    throw DegenerateCovarianceError(fmt::format(
        "conditioning block is singular: points {} and {} at spherical distance {:.3e}; "
        "use divided differences near the diagonal",
        bi, bj, best));
  }
  g.condition_number = hi / lo;
  g.log_det_condition = eig.eigenvalues().array().log().sum();
  const Eigen::MatrixXcd x = s11.ldlt().solve(s21.adjoint());
  Eigen::MatrixXcd c = s22 - s21 * x;
  g.conditioned_cov = 0.5 * (c + c.adjoint());
  return g;
}

double rho_1(cplx, int n) { return n; }

double rho_2(cplx z, cplx w, int n) {
  const double d = spherical_distance(z, w);
  if (d * std::sqrt(static_cast<double>(n)) < 1e-3) {
    throw DegenerateCovarianceError(fmt::format(
        "rho_2 at spherical distance {:.3e} is below the degeneracy threshold; "
        "use the divided-difference path",
        d));
  }
  DensityQuery q;
  q.m = 2;
  q.points = {z, w};
  const ConditionedGaussian g = conditioned_covariance(q, n);
  const auto& c = g.conditioned_cov;
  const double det = -std::expm1(n * std::log1p(-0.25 * d * d));
  const double dn = n;
  return dn * dn * (c(0, 0).real() * c(1, 1).real() + std::norm(c(0, 1))) / det;
}

double rho_2_lebesgue(cplx z, cplx w, int n) { return rho_2(z, w, n) * mu_density(z) * mu_density(w); }

double rho_2_by_distance(int n, double d) {
  const double u = 0.25 * d * d;
  if (u >= 1.0) return 1.0;
  const double s = u / (1.0 - u);
  const double log_k2 = n * std::log1p(-u);
  const double k2 = std::exp(log_k2);
  const double om = -std::expm1(log_k2);
  const double ns = n * s;
  const double a = ns * k2 / om;
  const double c12 = std::sqrt(k2) * (1.0 + s - ns / om);
  return ((1.0 - a) * (1.0 - a) + c12 * c12) / om;
}

LogGap log_clustering_gap(int n, double d) {
  const double u = 0.25 * d * d;
  if (u >= 1.0) return {-std::numeric_limits<double>::infinity(), 0};
  const double s = u / (1.0 - u);
  const double log_k2 = n * std::log1p(-u);
  const double k2 = std::exp(log_k2);
  const double om = -std::expm1(log_k2);
  const double ns = n * s;
  const double t = 1.0 + s - ns / om;
  const double gsum = 1.0 - 2.0 * ns / om + ns * ns * k2 / (om * om) + t * t;
  return {log_k2 + std::log(std::abs(gsum)) - std::log(om), gsum < 0.0 ? -1 : 1};
}

IntensityEstimate rho_lmp_mc(const DensityQuery& q, int n, int samples, std::uint64_t seed,
                             double target_se, Field field) {
  if (q.ell + q.m > 3) throw ConfigError("rho_lmp_mc is limited to ell + m <= 3");
  if (samples < 2) throw ConfigError("rho_lmp_mc needs at least two samples");
  const ConditionedGaussian g = conditioned_covariance(q, n, field);
  const int dim = static_cast<int>(g.conditioned_cov.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g.conditioned_cov);
  Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXcd factor = eig.eigenvectors() * root.asDiagonal();
  ComplexGaussianStream stream(seed, 0);
  std::vector<int> powers = q.powers;
  powers.resize(static_cast<std::size_t>(q.m), 0);
  double mean = 0.0, m2 = 0.0;
  Eigen::VectorXcd xi(dim);
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < dim; ++k) xi(k) = stream.next_complex();
    const Eigen::VectorXcd x = factor * xi;
    double v = 1.0;
    for (int j = 0; j < q.m; ++j) {
      const double a = std::abs(x(j));
      v *= a * a * std::pow(std::log(a), powers[j]);
    }
    for (int t = 0; t < q.ell; ++t) v *= std::log(std::abs(x(q.m + t)));
    // Welford update.
    const double delta = v - mean;
    mean += delta / (s + 1);
    m2 += delta * (v - mean);
  }
  const double det = std::exp(g.log_det_condition);
  IntensityEstimate est;
  est.samples = samples;
  est.value = mean / det;
  est.se = std::sqrt(m2 / (samples - 1.0) / samples) / det;
  est.scale = field == Field::gef ? 1.0 : std::pow(static_cast<double>(n), q.m);
  est.partial = target_se > 0.0 && est.se > target_se;
  return est;
}

ClusteringReport clustering_gap(int n, int grid_points, double d_min_factor, double d_max_factor,
                                double d_cap, int family_size, std::uint64_t seed) {
  ClusteringReport r;
  r.n = n;
  const double rn = std::sqrt(static_cast<double>(n));
  const double d_lo = d_min_factor / rn;
  const double d_hi = std::min(d_max_factor / rn, d_cap);
  if (!(d_hi > d_lo)) throw ConfigError("clustering grid is empty");
  ComplexGaussianStream stream(seed, 0);
  for (int i = 0; i < grid_points; ++i) {
    const double d = d_lo + (d_hi - d_lo) * i / (grid_points - 1);
    const LogGap lg = log_clustering_gap(n, d);
    r.distances.push_back(d);
    r.x.push_back(n * d * d);
    r.log_gap.push_back(lg.log_abs);
    const double closed = lg.sign * std::exp(lg.log_abs);
    const double s = std::sqrt(0.25 * d * d / (1.0 - 0.25 * d * d));
    for (int f = 0; f < family_size; ++f) {
      const Isometry t = random_isometry(stream);
      const ExtendedComplex z = apply_isometry(t, ExtendedComplex(cplx(0.0, 0.0)));
      const ExtendedComplex w = apply_isometry(t, ExtendedComplex(cplx(s, 0.0)));
      if (z.is_infinite() || w.is_infinite()) continue;
      const double gap = rho_2(z.value(), w.value(), n) / (double(n) * n) - 1.0;
      r.family_max_discrepancy = std::max(r.family_max_discrepancy, std::abs(gap - closed));
      r.max_gap_over_family = std::max(r.max_gap_over_family, std::abs(gap));
    }
  }
  // Least squares fit of log_gap against x.
  const double k = static_cast<double>(r.x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    sx += r.x[i];
    sy += r.log_gap[i];
    sxx += r.x[i] * r.x[i];
    sxy += r.x[i] * r.log_gap[i];
  }
  r.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  r.intercept = (sy - r.slope * sx) / k;
  return r;
}

double rho_2_pair_integral(int n, double d1, double d2, double tol) {
  const double dn = n;
  const double u_floor = 1e-6 / dn;
  const double u1 = std::max(0.25 * d1 * d1, u_floor);
  const double u2 = std::min(0.25 * d2 * d2, 1.0 - 1e-12);
  if (!(u2 > u1)) return 0.0;
  std::vector<double> bp{u1};
  for (double c : {0.25, 1.0, 4.0, 16.0, 64.0}) {
    const double u = c / dn;
    if (u > u1 && u < u2) bp.push_back(u);
  }
  bp.push_back(u2);
  QuadOptions opts;
  opts.abs_tol = tol * dn * dn;
  opts.rel_tol = tol;
  const QuadResult q = integrate(
      [n](double u) {
        const double r = std::sqrt(u / (1.0 - u));
        return rho_2(cplx(0.0, 0.0), cplx(r, 0.0), n);
      },
      bp, opts);
  return q.value;
}

std::vector<AnnulusCount> annulus_pair_counts(int n, int samples, std::uint64_t seed,
                                              const std::vector<std::pair<double, double>>& bands,
                                              int threads) {
  const std::size_t nb = bands.size();
  std::vector<double> counts(static_cast<std::size_t>(samples) * nb, 0.0);
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t s) {
    const EllipticPolynomial p = sample_elliptic(n, seed, s);
    const RootSet rs = find_roots(p);
    const auto cfg = SphericalConfiguration::from_planar(rs.roots, ConfigSource::roots);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      for (std::size_t j = i + 1; j < cfg.size(); ++j) {
        const double d = chordal(cfg.points[i].cartesian, cfg.points[j].cartesian);
        for (std::size_t b = 0; b < nb; ++b) {
          if (d >= bands[b].first && d < bands[b].second) counts[s * nb + b] += 2.0;
        }
      }
    }
  });
  std::vector<AnnulusCount> out;
  for (std::size_t b = 0; b < nb; ++b) {
    double mean = 0.0, m2 = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double v = counts[s * nb + b];
      const double delta = v - mean;
      mean += delta / (s + 1);
      m2 += delta * (v - mean);
    }
    const double se = samples > 1 ? std::sqrt(m2 / (samples - 1.0) / samples) : 0.0;
    out.push_back({bands[b].first, bands[b].second,
                   rho_2_pair_integral(n, bands[b].first, bands[b].second), mean, se});
  }
  return out;
}

double min_dd_covariance_eigenvalue(int m, int trials, double radius, std::uint64_t seed) {
  ComplexGaussianStream stream(seed, 0);
  double best = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> pts(static_cast<std::size_t>(m));
    for (auto& z : pts) {
      const double r = radius * std::sqrt(stream.next_uniform());
      z = std::polar(r, 2.0 * std::numbers::pi * stream.next_uniform());
    }
    const Eigen::MatrixXcd cov = gef_divided_difference_covariance(pts);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov, Eigen::EigenvaluesOnly);
    best = std::min(best, eig.eigenvalues().minCoeff());
  }
  return best;
}

}  // namespace kostlan
