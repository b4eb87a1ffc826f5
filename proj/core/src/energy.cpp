#include "kostlan/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "kostlan/error.hpp"

namespace kostlan {
namespace {

constexpr std::size_t kBlockRows = 64;
constexpr double kLog2 = std::numbers::ln2;

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

struct Prepared {
  std::vector<cplx> z;
  std::vector<Vec3> xyz;
  std::vector<double> one_plus_norm;
  std::vector<char> inner;  // finite with |z| <= 1
};

Prepared prepare(const SphericalConfiguration& cfg) {
  Prepared p;
  const std::size_t n = cfg.size();
  p.z.resize(n);
  p.xyz.resize(n);
  p.one_plus_norm.resize(n);
  p.inner.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = cfg.points[i];
    p.xyz[i] = pt.cartesian;
    if (!pt.planar.is_infinite()) {
      p.z[i] = pt.planar.value();
      p.inner[i] = std::norm(p.z[i]) <= 1.0;
      p.one_plus_norm[i] = 1.0 + std::norm(p.z[i]);
    }
  }
  return p;
}

// -sum_{j > i} log d^2 for i in [lo, hi).
double block_energy(const Prepared& p, std::size_t lo, std::size_t hi) {
  const std::size_t n = p.z.size();
  Kahan acc;
  for (std::size_t i = lo; i < hi; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double log_d2;
      double d2;
      if (p.inner[i] && p.inner[j]) {
        d2 = 4.0 * std::norm(p.z[i] - p.z[j]) / (p.one_plus_norm[i] * p.one_plus_norm[j]);
        log_d2 = std::log(d2);
      } else {
        const double dx = p.xyz[i][0] - p.xyz[j][0];
        const double dy = p.xyz[i][1] - p.xyz[j][1];
        const double dz = p.xyz[i][2] - p.xyz[j][2];
        d2 = dx * dx + dy * dy + dz * dz;
        log_d2 = std::log(d2);
      }
      if (!(d2 >= kCoincidenceThreshold * kCoincidenceThreshold)) {
        throw CoincidentPointsError(i, j, std::sqrt(d2));
      }
      acc.add(-log_d2);
    }
  }
  return acc.sum;
}

}  // namespace

double pairwise_energy(const SphericalConfiguration& cfg, int threads) {
  const Prepared p = prepare(cfg);
  const std::size_t n = p.z.size();
  if (n < 2) return 0.0;
  const std::size_t blocks = (n + kBlockRows - 1) / kBlockRows;
  std::vector<double> partial(blocks, 0.0);
  std::vector<std::exception_ptr> errors(blocks);
  auto run_block = [&](std::size_t b) {
    try {
      partial[b] = block_energy(p, b * kBlockRows, std::min(n, (b + 1) * kBlockRows));
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  Kahan total;
  for (std::size_t b = 0; b < blocks; ++b) {
    if (errors[b]) std::rethrow_exception(errors[b]);
    total.add(partial[b]);
  }
  return total.sum;
}

double pairwise_energy(const std::vector<cplx>& points, int threads) {
  return pairwise_energy(SphericalConfiguration::from_planar(points, ConfigSource::explicit_points),
                         threads);
}

double expected_energy(int n) {
  const double k = 0.5 - kLog2;
  const double dn = n;
  return k * dn * dn - 0.5 * dn * std::log(dn) - k * dn;
}

double c_min_upper() {
  return 2.0 * kLog2 + 0.5 * std::log(2.0 / 3.0) +
         3.0 * (0.5 * std::log(std::numbers::pi) - std::lgamma(1.0 / 3.0));
}

ReferenceCurves reference_curves(int n) {
  const double k = 0.5 - kLog2;
  const double dn = n;
  const double base = k * dn * dn - 0.5 * dn * std::log(dn);
  return {base + kCMinLower * dn, base + c_min_upper() * dn, k * dn * dn - k * dn,
          expected_energy(n)};
}

double i_n_from_roots(const EllipticPolynomial& p, const RootSet& rs) {
  const double an = std::abs(p.leading());
  if (an == 0.0) throw ConfigError("leading coefficient is zero");
  const int n = p.degree();
  Kahan acc;
  for (const cplx& z : rs.roots) acc.add(0.5 * std::log1p(std::norm(z)));
  return n * (std::log(an) + acc.sum - 0.5 * n);
}

double s_n_from_roots(const EllipticPolynomial& p, const RootSet& rs) {
  Kahan acc;
  for (const cplx& z : rs.roots) {
    const double d = std::abs(p.dnormalized(z));
    if (d == 0.0) throw NumericRangeError("derivative vanishes at a root");
    acc.add(std::log(d));
  }
  return acc.sum;
}

EnergyBreakdown decomposition_check(const EllipticPolynomial& p, const RootSet& rs) {
  EnergyBreakdown b;
  b.n = p.degree();
  const double n = b.n;
  b.e_n = pairwise_energy(SphericalConfiguration::from_planar(rs.roots, ConfigSource::roots));
  b.i_n = i_n_from_roots(p, rs);
  b.s_n = s_n_from_roots(p, rs);
  const double rhs = (0.5 - kLog2) * n * n - 0.5 * n * std::log(n) + b.i_n - b.s_n + kLog2 * n;
  b.identity_residual = b.e_n - rhs;
  return b;
}

EllipticPolynomial transform_polynomial(const EllipticPolynomial& p, const Isometry& t) {
  const int n = p.degree();
  const auto c = p.weighted_coeffs();
  // P(z) = alpha z + beta, Q(z) = conj(alpha) - conj(beta) z.
  const cplx p0 = t.beta, p1 = t.alpha;
  const cplx q0 = std::conj(t.alpha), q1 = -std::conj(t.beta);
  auto mul_linear = [](const std::vector<cplx>& v, cplx a0, cplx a1) {
    std::vector<cplx> out(v.size() + 1, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      out[k] += a0 * v[k];
      out[k + 1] += a1 * v[k];
    }
    return out;
  };
  // Horner in P with Q^{n-j} carried alongside.
  std::vector<cplx> r{c[n]};
  std::vector<cplx> qpow{1.0};
  for (int j = n - 1; j >= 0; --j) {
    r = mul_linear(r, p0, p1);
    qpow = mul_linear(qpow, q0, q1);
    for (std::size_t k = 0; k < qpow.size(); ++k) r[k] += c[j] * qpow[k];
  }
  return EllipticPolynomial::from_weighted(r);
}

}  // namespace kostlan
