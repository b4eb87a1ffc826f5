#pragma once

#include <vector>

namespace kostlan {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kZeta3 = 1.20205690315959428540;
inline constexpr double kPi = 3.14159265358979323846;

/// Value with an error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// sum_{k >= 1} 1/k^3 with an Euler-Maclaurin tail, |error| < 1e-14.
Estimate zeta3_series();

/// Li_2(x) for x in [0, 1].
double dilog(double x);

/// sum_{j >= 2} x^j / (j^2 (j - 1)) for x in [0, 1].
Estimate psi_series(double x);
/// sum_{j >= 2} x^j / (j^2 (j - 1)^2) for x in [0, 1].
Estimate beta_square_series(double x);

/// Laguerre polynomial L_j(x) via the three-term recurrence.
double laguerre(int j, double x);
/// L_0(x) .. L_{jmax}(x)
std::vector<double> laguerre_all(int jmax, double x);

/// P(N(0,1) > x)
double normal_sf(double x);
double normal_cdf(double x);

}  // namespace kostlan
