#include "kostlan/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <numeric>

#include "kostlan/error.hpp"

namespace kostlan {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string replay_tag(const EllipticPolynomial& p) {
  if (!p.origin()) return "unseeded polynomial";
  return fmt::format("seed {} stream {}", p.origin()->master_seed, p.origin()->stream_index);
}

// Upper convex hull of (j, log|c_j|) gives one radius per edge.
std::vector<cplx> newton_polygon_guesses(const EllipticPolynomial& p, int first, double shift) {
  const int n = p.degree();
  std::vector<int> idx;
  std::vector<double> y;
  for (int j = first; j <= n; ++j) {
    const double a = std::abs(p.raw_coeffs()[j]);
    if (a == 0.0) continue;
    const double v = std::log(a) + p.log_binom()[j];
    while (idx.size() >= 2) {
      const std::size_t m = idx.size();
      const double x1 = idx[m - 2], y1 = y[m - 2], x2 = idx[m - 1], y2 = y[m - 1];
      if ((x2 - x1) * (v - y1) - (j - x1) * (y2 - y1) >= 0.0) {
        idx.pop_back();
        y.pop_back();
      } else {
        break;
      }
    }
    idx.push_back(j);
    y.push_back(v);
  }
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(n - first));
  for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
    const int cnt = idx[e + 1] - idx[e];
    const double r = std::exp((y[e] - y[e + 1]) / cnt);
    const double offset = 2.0 * std::numbers::pi * idx[e] / n + shift;
    for (int m = 0; m < cnt; ++m) {
      z.push_back(std::polar(r, 2.0 * std::numbers::pi * m / cnt + offset));
    }
  }
  return z;
}

struct AberthState {
  std::vector<cplx> z;
  std::vector<char> done;
  int iterations = 0;
  bool all_done = false;
};

AberthState aberth(const EllipticPolynomial& p, std::vector<cplx> guess, int fixed_zeros,
                   int max_iterations) {
  AberthState st;
  st.z = std::move(guess);
  const std::size_t m = st.z.size();
  st.done.assign(m, 0);
  std::size_t remaining = m;
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    st.iterations = it + 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (st.done[i]) continue;
      const cplx zi = st.z[i];
      const Evaluation ev = p.evaluate(zi);
      if (std::abs(ev.value) <= 4.0 * kEps * ev.magnitude) {
        st.done[i] = 1;
        --remaining;
        continue;
      }
      double sr = 0.0, si = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double dr = zi.real() - st.z[j].real();
        const double di = zi.imag() - st.z[j].imag();
        const double inv = 1.0 / (dr * dr + di * di);
        sr += dr * inv;
        si -= di * inv;
      }
      if (fixed_zeros > 0) {
        const double inv = fixed_zeros / std::norm(zi);
        sr += zi.real() * inv;
        si -= zi.imag() * inv;
      }
      const cplx nr = ev.newton;
      const cplx den = 1.0 - nr * cplx(sr, si);
      const double dn = std::norm(den);
      const cplx w = nr * std::conj(den) / dn;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      st.z[i] = zi - w;
      if (std::abs(w) <= 2.0 * kEps * std::abs(st.z[i])) {
        st.done[i] = 1;
        --remaining;
      }
    }
  }
  st.all_done = remaining == 0;
  return st;
}

std::vector<cplx> companion_roots(const EllipticPolynomial& p) {
  const int n = p.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  const auto w = p.weighted_coeffs();
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -w[i] / w[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("companion eigensolver failed for " + replay_tag(p));
  }
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

// Newton steps that are only accepted while they shrink the residual.
cplx polish(const EllipticPolynomial& p, cplx z, double max_step) {
  Evaluation ev = p.evaluate(z);
  for (int k = 0; k < 4; ++k) {
    if (std::abs(ev.newton) > max_step) break;
    const cplx cand = z - ev.newton;
    const Evaluation ec = p.evaluate(cand);
    if (!(std::abs(ec.value) < std::abs(ev.value))) break;
    z = cand;
    ev = ec;
  }
  return z;
}

RootSet finish(const EllipticPolynomial& p, std::vector<cplx> z, std::vector<RootFlag> flags,
               int iterations, bool fallback) {
  const std::size_t n = z.size();
  // Polishing is restricted to a fraction of the distance to the nearest neighbour.
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(z[i] - z[j]);
      nearest[i] = std::min(nearest[i], d);
      nearest[j] = std::min(nearest[j], d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] == 0.0 && p.raw_coeffs()[0] == 0.0) continue;
    const cplx before = z[i];
    z[i] = polish(p, z[i], 0.25 * nearest[i]);
    if (flags[i] == RootFlag::converged && z[i] != before) flags[i] = RootFlag::polished;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (z[a].real() != z[b].real()) return z[a].real() < z[b].real();
    return z[a].imag() < z[b].imag();
  });
  RootSet rs;
  rs.iterations = iterations;
  rs.used_fallback = fallback;
  rs.roots.reserve(n);
  rs.residuals.reserve(n);
  rs.flags.reserve(n);
  for (std::size_t k : order) {
    rs.roots.push_back(z[k]);
    rs.residuals.push_back(std::abs(p.normalized(z[k])));
    rs.flags.push_back(flags[k]);
  }
  return rs;
}

}  // namespace

double RootSet::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

RootSet find_roots(const EllipticPolynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n == 0) return {};
  if (p.leading() == 0.0) throw ConfigError("leading coefficient is zero");
  const auto raw = p.raw_coeffs();
  int zeros = 0;
  while (zeros < n && raw[zeros] == 0.0) ++zeros;

  std::vector<cplx> z;
  std::vector<RootFlag> flags;
  int iterations = 0;
  bool ok = false;
  const double shifts[] = {0.4, 1.7};
  for (double shift : shifts) {
    AberthState st = aberth(p, newton_polygon_guesses(p, zeros, shift), zeros, opts.max_iterations);
    iterations += st.iterations;
    z = std::move(st.z);
    flags.assign(z.size(), RootFlag::converged);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (!st.done[i]) flags[i] = RootFlag::unconverged;
    }
    for (int k = 0; k < zeros; ++k) {
      z.push_back(0.0);
      flags.push_back(RootFlag::converged);
    }
    if (st.all_done) {
      RootSet rs = finish(p, z, flags, iterations, false);
      if (rs.max_residual() <= opts.residual_tol) return rs;
    }
    if (n > opts.fallback_max_degree || !opts.allow_fallback) continue;
    ok = true;
    break;
  }
  if (ok) {
    std::vector<cplx> ev = companion_roots(p);
    flags.assign(ev.size(), RootFlag::fallback);
    RootSet rs = finish(p, std::move(ev), std::move(flags), iterations, true);
    if (rs.max_residual() <= opts.residual_tol) return rs;
  }
  throw ConvergenceError(fmt::format("root finding failed at degree {} for {}", n, replay_tag(p)));
}

cplx refine_root(const EllipticPolynomial& p, cplx z) {
  for (int k = 0; k < 50; ++k) {
    const Evaluation ev = p.evaluate(z);
    if (ev.value == 0.0) return z;
    const double tol = 1e-14 * std::max(1.0, std::abs(z));
    if (std::abs(ev.newton) < tol) return z - ev.newton;
    if (std::abs(ev.value) <= kEps * ev.magnitude) return z;
    z -= ev.newton;
  }
  throw ConvergenceError("Newton refinement diverged for " + replay_tag(p));
}

RootDiagnostics validate_roots(const EllipticPolynomial& p, const RootSet& rs,
                               double residual_tol) {
  RootDiagnostics d;
  const int n = p.degree();
  if (static_cast<int>(rs.size()) != n) {
    d.message = fmt::format("expected {} roots, got {}", n, rs.size());
    return d;
  }
  if (n == 0) {
    d.passed = true;
    return d;
  }
  const auto raw = p.raw_coeffs();
  cplx sum = 0.0;
  double abs_sum = 0.0, log_mod = 0.0, arg_sum = 0.0;
  for (const cplx& z : rs.roots) {
    sum += z;
    abs_sum += std::abs(z);
    log_mod += std::log(std::abs(z));
    arg_sum += std::arg(z);
  }
  const cplx expected_sum = -std::sqrt(static_cast<double>(n)) * raw[n - 1] / raw[n];
  d.sum_error = std::abs(sum - expected_sum);
  d.sum_scale = 1.0 + abs_sum;
  bool product_ok = true;
  if (raw[0] != 0.0) {
    d.log_product_error = std::abs(log_mod - (std::log(std::abs(raw[0])) - std::log(std::abs(raw[n]))));
    const double target = std::arg(raw[0] / raw[n]) + (n % 2 ? std::numbers::pi : 0.0);
    const double diff = std::remainder(arg_sum - target, 2.0 * std::numbers::pi);
    d.arg_product_error = std::abs(diff);
    product_ok = d.log_product_error <= 1e-8 * n && d.arg_product_error <= 1e-8 * n;
  }
  d.max_residual = rs.max_residual();
  const bool sum_ok = d.sum_error <= 1e-8 * d.sum_scale;
  const bool res_ok = d.max_residual <= residual_tol;
  d.passed = sum_ok && product_ok && res_ok;
  d.message = fmt::format("sum err {:.3e} (scale {:.3e}), log|prod| err {:.3e}, arg err {:.3e}, max residual {:.3e}",
                          d.sum_error, d.sum_scale, d.log_product_error, d.arg_product_error,
                          d.max_residual);
  return d;
}

}  // namespace kostlan
