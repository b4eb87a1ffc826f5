#include "kostlan/special.hpp"

#include <cmath>
#include <stdexcept>

namespace kostlan {
namespace {

// Power series with terms bounded by x^j * c_j, c_j decreasing; the tail after
// term J is at most x^{J+1} c_{J+1} / (1 - x).
template <class Coef>
Estimate geometric_series(double x, int first, Coef coef) {
  Estimate e;
  double xp = std::pow(x, first);
  for (int j = first;; ++j) {
    const double term = xp * coef(j);
    e.value += term;
    xp *= x;
    const double bound = xp * coef(j + 1) / (1.0 - x);
    if (bound < 1e-17 * std::max(e.value, 1e-300) || xp == 0.0) {
      e.error = bound;
      break;
    }
  }
  return e;
}

}  // namespace

Estimate zeta3_series() {
  // Direct sum to N, then the Euler-Maclaurin tail
  // sum_{k > N} k^-3 = 1/(2N^2) - 1/(2N^3) + 1/(4N^4) - 1/(12N^6) + ...
  constexpr int N = 1000;
  double s = 0.0;
  for (int k = N; k >= 1; --k) {
    const double dk = k;
    s += 1.0 / (dk * dk * dk);
  }
  const double n = N;
  const double tail = 1.0 / (2 * n * n) - 1.0 / (2 * n * n * n) + 1.0 / (4 * n * n * n * n) -
                      1.0 / (12 * std::pow(n, 6));
  return {s + tail, 1.0 / std::pow(n, 8)};
}

double dilog(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("dilog defined here on [0, 1]");
  if (x == 1.0) return kPi * kPi / 6.0;
  if (x <= 0.5) {
    return geometric_series(x, 1, [](int k) { return 1.0 / (double(k) * k); }).value;
  }
  const double y = 1.0 - x;
  return kPi * kPi / 6.0 - std::log(x) * std::log(y) - dilog(y);
}

Estimate psi_series(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("psi_series needs x in [0, 1]");
  if (x <= 0.5) {
    return geometric_series(x, 2, [](int j) { return 1.0 / (double(j) * j * (j - 1)); });
  }
  // 1/(j^2 (j-1)) = 1/(j-1) - 1/j - 1/j^2 summed in closed form.
  const double y = 1.0 - x;
  const double ylog = y > 0.0 ? y * std::log(y) : 0.0;
  return {ylog + 2.0 * x - dilog(x), 4e-16};
}

Estimate beta_square_series(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("beta_square_series needs x in [0, 1]");
  if (x <= 0.5) {
    return geometric_series(x, 2, [](int j) {
      const double d = double(j) * (j - 1);
      return 1.0 / (d * d);
    });
  }
  const double y = 1.0 - x;
  const double ylog = y > 0.0 ? y * std::log(y) : 0.0;
  return {(1.0 + x) * dilog(x) - 3.0 * x - 2.0 * ylog, 8e-16};
}

double laguerre(int j, double x) {
  if (j == 0) return 1.0;
  double prev = 1.0, cur = 1.0 - x;
  for (int k = 1; k < j; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_all(int jmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(jmax) + 1);
  out[0] = 1.0;
  if (jmax >= 1) out[1] = 1.0 - x;
  for (int k = 1; k < jmax; ++k) {
    out[k + 1] = ((2.0 * k + 1.0 - x) * out[k] - k * out[k - 1]) / (k + 1.0);
  }
  return out;
}

double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace kostlan
