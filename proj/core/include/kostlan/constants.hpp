#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kostlan/special.hpp"

namespace kostlan {

struct ChaosCoefficients {
  std::vector<double> alpha;  // log x = sum alpha_j L_j(x)
  std::vector<double> beta;   // x log x = sum beta_j L_j(x)
};

ChaosCoefficients chaos_coefficients(int j_max);

/// s / (e^s - 1)
double bose_ratio(double s);
/// 1 - s / (e^s - 1), without cancellation near 0
double sigma2(double s);
/// e^{-s/2} (1 - s - e^{-s}) / (1 - (1 + s) e^{-s})
double theta(double s);

/// Integrands on (0, infinity).
namespace integrand {
double j1(double s);
double i1(double s);
double i2(double s);
double i3(double s);
double h1(double s);
double h2(double s);
double c1(double s);
/// 1 - (1 - e^{-s})^{-1} sigma^4
double i1_shift(double s);
}  // namespace integrand

/// Adaptive integral of a decaying integrand over (0, infinity), truncated at
/// s = 60 with an exponential-envelope tail bound folded into the error.
Estimate integrate_half_line(double (*f)(double), double tol = 1e-13);

Estimate c1_series();
Estimate c1_integral();

struct J1C3 {
  Estimate j1;
  Estimate c3;
};
J1C3 j1_and_c3(double tol = 1e-13);

struct IIntegrals {
  Estimate i1, i2, i3;
};
IIntegrals i_integrals(double tol = 1e-13);

struct C2CStar {
  Estimate c2;
  Estimate c_star;
};
C2CStar c2_and_cstar(const IIntegrals& ii, const Estimate& c1, const Estimate& c3);

struct BoundCheck {
  std::string name;
  double value;
  double reference;
  bool passed;
  std::string detail;
};

/// closed form of int h2 with the sign of the gamma/2 (3 - gamma) term as
/// required for agreement with the integral
double h2_integral_closed_form();
/// the same expression with - gamma/2 (3 - gamma)
double h2_integral_flipped_sign();
double h1_integral_closed_form();

std::vector<BoundCheck> gap_bounds();

struct ConstantsReport {
  ChaosCoefficients coefficients;
  Estimate j1, i1, i2, i3;
  Estimate c1, c2, c3, c_star;
  Estimate c1_integral;
  /// (sqrt(c2) - sqrt(c1))^2 with c2 replaced by its bound c1 + 0.025
  double c_star_lower_bound = 0.0;
  std::vector<BoundCheck> bounds;
  double seconds = 0.0;
};

ConstantsReport compute_constants(int j_max = 10, double tol = 1e-13);

struct LaguerreCheck {
  int m, k;
  double mean;
  double se;
  double expected;
  bool passed;
};

/// E[L_m(|Z1|^2) L_k(|Z2|^2)] for E[Z1 conj Z2] = theta, by Monte Carlo.
std::vector<LaguerreCheck> laguerre_orthogonality_check(double theta, int j_max, int samples,
                                                        std::uint64_t seed);

}  // namespace kostlan
