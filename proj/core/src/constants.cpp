#include "kostlan/constants.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>

#include "kostlan/quadrature.hpp"
#include "kostlan/rng.hpp"

namespace kostlan {
namespace {

constexpr double kBeta0 = 1.0 - kEulerGamma;
constexpr double kBeta1 = kEulerGamma - 2.0;
constexpr double kTruncation = 60.0;

// expm1(s) - s
double expm1_minus_linear(double s) {
  if (s < 1.0) {
    double term = s * s / 2.0, sum = 0.0;
    for (int k = 3; term > 1e-18 * sum || sum == 0.0; ++k) {
      sum += term;
      term *= s / k;
    }
    return sum;
  }
  return std::expm1(s) - s;
}

// e^{-s} - 1 + s
double expm1_neg_plus_linear(double s) {
  if (s < 1.0) {
    double term = s * s / 2.0, sum = 0.0;
    for (int k = 3; std::abs(term) > 1e-18 * std::abs(sum) || sum == 0.0; ++k) {
      sum += term;
      term *= -s / k;
    }
    return sum;
  }
  return std::expm1(-s) + s;
}

// sigma^4 / (1 - e^{-s})
double prefactor(double s) {
  const double v = sigma2(s);
  return v * v / -std::expm1(-s);
}

}  // namespace

ChaosCoefficients chaos_coefficients(int j_max) {
  ChaosCoefficients c;
  c.alpha.resize(static_cast<std::size_t>(j_max) + 1);
  c.beta.resize(static_cast<std::size_t>(j_max) + 1);
  c.alpha[0] = -kEulerGamma;
  c.beta[0] = kBeta0;
  if (j_max >= 1) {
    c.alpha[1] = -1.0;
    c.beta[1] = kBeta1;
  }
  for (int j = 2; j <= j_max; ++j) {
    c.alpha[j] = -1.0 / j;
    c.beta[j] = 1.0 / (double(j) * (j - 1));
  }
  return c;
}

double bose_ratio(double s) { return s == 0.0 ? 1.0 : s / std::expm1(s); }

double sigma2(double s) {
  if (s > 700.0) return 1.0;
  return expm1_minus_linear(s) / std::expm1(s);
}

double theta(double s) {
  if (s < 1.0) {
    // -e^{s/2} (e^{-s} - 1 + s) / (e^s - 1 - s)
    return -std::exp(0.5 * s) * expm1_neg_plus_linear(s) / expm1_minus_linear(s);
  }
  return -std::exp(-0.5 * s) * (s - 1.0 + std::exp(-s)) / (1.0 - (1.0 + s) * std::exp(-s));
}

namespace integrand {

double j1(double s) { return psi_series(bose_ratio(s)).value; }

double i1(double s) {
  const double l = std::log(sigma2(s));
  const double b = kBeta0 + l;
  return prefactor(s) * b * b - kBeta0 * kBeta0;
}

double i2(double s) {
  const double b = kBeta1 - std::log(sigma2(s));
  const double t = theta(s);
  return prefactor(s) * b * b * t * t;
}

double i3(double s) {
  const double t = theta(s);
  return prefactor(s) * beta_square_series(t * t).value;
}

double h1(double s) {
  const double r = bose_ratio(s);
  return prefactor(s) * (-2.0 * kBeta0 * (r + r * r) + r * r);
}

double h2(double s) {
  const double r = bose_ratio(s);
  const double b = kBeta1 + 1.5 * r;
  const double t = theta(s);
  return prefactor(s) * b * b * t * t;
}

double c1(double s) { return 0.25 * dilog(std::exp(-s)); }

double i1_shift(double s) { return 1.0 - prefactor(s); }

}  // namespace integrand

Estimate integrate_half_line(double (*f)(double), double tol) {
  QuadOptions opts;
  opts.abs_tol = tol;
  opts.rel_tol = 0.0;
  opts.max_intervals = 20000;
  const QuadResult q = integrate(f, {0.0, 0.01, 0.1, 1.0, 4.0, 12.0, 30.0, kTruncation}, opts);
  // Every integrand here is bounded by 10 (1 + s)^2 e^{-s} beyond s = 10.
  const double s = kTruncation;
  const double tail = 10.0 * std::exp(-s) * (s * s + 4.0 * s + 5.0);
  return {q.value, q.error + tail};
}

Estimate c1_series() {
  const Estimate z = zeta3_series();
  return {z.value / 4.0, z.error / 4.0};
}

Estimate c1_integral() { return integrate_half_line(integrand::c1); }

J1C3 j1_and_c3(double tol) {
  J1C3 r;
  r.j1 = integrate_half_line(integrand::j1, tol);
  r.c3 = {kPi * kPi / 24.0 - r.j1.value / 4.0, r.j1.error / 4.0};
  return r;
}

IIntegrals i_integrals(double tol) {
  return {integrate_half_line(integrand::i1, tol), integrate_half_line(integrand::i2, tol),
          integrate_half_line(integrand::i3, tol)};
}

C2CStar c2_and_cstar(const IIntegrals& ii, const Estimate& c1, const Estimate& c3) {
  C2CStar r;
  const double g = kEulerGamma;
  r.c2.value = 0.25 * (kPi * kPi / 6.0 + g * (g - 2.0) + ii.i1.value + ii.i2.value + ii.i3.value);
  r.c2.error = 0.25 * (ii.i1.error + ii.i2.error + ii.i3.error);
  r.c_star.value = c1.value + r.c2.value - 2.0 * c3.value;
  r.c_star.error = c1.error + r.c2.error + 2.0 * c3.error;
  return r;
}

double h2_integral_closed_form() {
  const double g = kEulerGamma, p2 = kPi * kPi;
  return p2 / 2.0 * (1.0 / 12.0 + p2 / 10.0 - g / 3.0 * (1.0 - g)) -
         3.0 * kZeta3 * (0.25 + g) + g / 2.0 * (3.0 - g) - 19.0 / 16.0;
}

double h2_integral_flipped_sign() {
  return h2_integral_closed_form() - kEulerGamma * (3.0 - kEulerGamma);
}

double h1_integral_closed_form() {
  const double g = kEulerGamma, p2 = kPi * kPi;
  return p2 * (0.5 - 2.0 * g / 3.0 + p2 / 15.0 * (1.0 - 2.0 * g)) + kZeta3 * (18.0 * g - 11.0) -
         g / 2.0 + 5.0 / 12.0;
}

std::vector<BoundCheck> gap_bounds() {
  std::vector<BoundCheck> out;
  const double g = kEulerGamma;
  const Estimate ih2 = integrate_half_line(integrand::h2);
  const double cf2 = h2_integral_closed_form();
  out.push_back({"int_h2_lower", ih2.value, 1.408, ih2.value > 1.408, "int h2 > 1.408"});
  out.push_back({"int_h2_closed_form", ih2.value, cf2, std::abs(ih2.value - cf2) <= 1e-8,
                 fmt::format("|int h2 - closed form| = {:.3e}", std::abs(ih2.value - cf2))});
  const double flipped = h2_integral_flipped_sign();
  out.push_back({"int_h2_flipped_sign", ih2.value, flipped, std::abs(ih2.value - flipped) <= 1e-8,
                 fmt::format("opposite sign gives {:.6f}", flipped)});
  const double h2_at_1 = integrand::h2(1.0);
  out.push_back({"h2_at_1", h2_at_1, 0.06, h2_at_1 <= 0.06, "h2(1) <= 0.06"});
  const Estimate ih1 = integrate_half_line(integrand::h1);
  const double cf1 = h1_integral_closed_form();
  out.push_back({"int_h1_lower", ih1.value, -0.472, ih1.value > -0.472, "int h1 > -0.472"});
  out.push_back({"int_h1_closed_form", ih1.value, cf1, std::abs(ih1.value - cf1) <= 1e-8,
                 fmt::format("|int h1 - closed form| = {:.3e}", std::abs(ih1.value - cf1))});
  const Estimate shift = integrate_half_line(integrand::i1_shift);
  const double shift_cf = 0.5 + kPi * kPi / 6.0;
  out.push_back({"i1_shift_closed_form", shift.value, shift_cf,
                 std::abs(shift.value - shift_cf) <= 1e-8, "int (1 - prefactor) = 1/2 + pi^2/6"});
  const double i1_offset = -0.5 * kBeta0 * kBeta0 * (1.0 + kPi * kPi / 3.0);
  out.push_back({"i1_offset", i1_offset, -0.384, i1_offset > -0.384,
                 "-(1-gamma)^2/2 (1 + pi^2/3) > -0.384"});
  bool h1_nonpositive = true, h2_increasing = true;
  double prev = integrand::h2(1e-6), h2_max = prev;
  for (int k = 1; k <= 2000; ++k) {
    const double s = 1e-6 + k * (1.0 - 1e-6) / 2000.0;
    const double cur = integrand::h2(s);
    h2_increasing = h2_increasing && cur >= prev;
    h2_max = std::max(h2_max, cur);
    prev = cur;
  }
  for (int k = 1; k <= 4000; ++k) h1_nonpositive = h1_nonpositive && integrand::h1(k * 0.01) <= 0.0;
  out.push_back({"h2_increasing_on_unit_interval", h2_increasing ? 1.0 : 0.0, 1.0, h2_increasing,
                 "h2 nondecreasing on a 2000-point grid of (0, 1]"});
  out.push_back({"h2_max_at_1", h2_max, h2_at_1, h2_max <= h2_at_1,
                 "max of h2 over the same grid is attained at 1"});
  out.push_back({"h1_nonpositive", h1_nonpositive ? 1.0 : 0.0, 1.0, h1_nonpositive,
                 "h1 <= 0 on a grid of (0, 40]"});
  // I2 >= int h2 - h2(1) and I1' >= int h1 since h1 <= 0.
  const double i2_bound = ih2.value - h2_at_1;
  out.push_back({"i2_bound", i2_bound, 1.348, i2_bound >= 1.348, "int h2 - h2(1) >= 1.348"});
  const double bound4 = -0.384 - 0.472 + 1.348 + kPi * kPi / 6.0 + g * (g - 2.0) - kZeta3;
  out.push_back({"four_c2_minus_c1_bound", bound4, 0.1, bound4 >= 0.1,
                 "-0.384 - 0.472 + 1.348 + pi^2/6 + gamma(gamma-2) - zeta(3) >= 0.1"});
  out.push_back({"c2_minus_c1_bound", bound4 / 4.0, 0.025, bound4 / 4.0 > 0.025,
                 "c2 - c1 > 0.025 from the bound arithmetic"});
  return out;
}

ConstantsReport compute_constants(int j_max, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  ConstantsReport r;
  r.coefficients = chaos_coefficients(j_max);
  r.c1 = c1_series();
  r.c1_integral = c1_integral();
  const J1C3 jc = j1_and_c3(tol);
  r.j1 = jc.j1;
  r.c3 = jc.c3;
  const IIntegrals ii = i_integrals(tol);
  r.i1 = ii.i1;
  r.i2 = ii.i2;
  r.i3 = ii.i3;
  const C2CStar cc = c2_and_cstar(ii, r.c1, r.c3);
  r.c2 = cc.c2;
  r.c_star = cc.c_star;
  const double lo = std::sqrt(r.c1.value + 0.025) - std::sqrt(r.c1.value);
  r.c_star_lower_bound = lo * lo;
  r.bounds = gap_bounds();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<LaguerreCheck> laguerre_orthogonality_check(double th, int j_max, int samples,
                                                        std::uint64_t seed) {
  ComplexGaussianStream stream(seed, 0);
  const int m = j_max + 1;
  std::vector<double> sum(static_cast<std::size_t>(m * m), 0.0), sum2(sum.size(), 0.0);
  const double comp = std::sqrt(std::max(0.0, 1.0 - th * th));
  for (int s = 0; s < samples; ++s) {
    const auto z1 = stream.next_complex();
    const auto w = stream.next_complex();
    const auto z2 = th * z1 + comp * w;
    const auto l1 = laguerre_all(j_max, std::norm(z1));
    const auto l2 = laguerre_all(j_max, std::norm(z2));
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const double v = l1[a] * l2[b];
        sum[a * m + b] += v;
        sum2[a * m + b] += v * v;
      }
    }
  }
  std::vector<LaguerreCheck> out;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double mean = sum[a * m + b] / samples;
      const double var = (sum2[a * m + b] / samples - mean * mean) * samples / (samples - 1.0);
      const double se = std::sqrt(std::max(var, 0.0) / samples);
      const double expected = a == b ? std::pow(th * th, a) : 0.0;
      out.push_back({a, b, mean, se, expected, std::abs(mean - expected) <= 5.0 * se + 1e-12});
    }
  }
  return out;
}

}  // namespace kostlan
