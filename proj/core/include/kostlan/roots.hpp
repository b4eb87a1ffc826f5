#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "kostlan/polymodel.hpp"

namespace kostlan {

enum class RootFlag : std::uint8_t {
  converged,    // simultaneous iteration met its stopping rule
  polished,     // needed extra Newton steps afterwards
  fallback,     // came from the companion-matrix eigensolver
  unconverged,  // never met a stopping rule
};

struct RootSet {
  std::vector<cplx> roots;
  /// |normalized f| at each root
  std::vector<double> residuals;
  std::vector<RootFlag> flags;
  int iterations = 0;
  bool used_fallback = false;

  std::size_t size() const noexcept { return roots.size(); }
  double max_residual() const;
};

struct RootOptions {
  int max_iterations = 400;
  bool allow_fallback = true;
  int fallback_max_degree = 500;
  /// Accept only if every residual is below this after refinement.
  double residual_tol = 1e-10;
};

RootSet find_roots(const EllipticPolynomial& p, const RootOptions& opts = {});

/// Newton on f until |step| < 1e-14 max(1, |z|); ConvergenceError after 50 steps.
cplx refine_root(const EllipticPolynomial& p, cplx z0);

struct RootDiagnostics {
  bool passed = false;
  double sum_error = 0.0;        // |sum roots + c_{n-1}/c_n|
  double sum_scale = 0.0;        // 1 + sum |roots|
  double log_product_error = 0.0;
  double arg_product_error = 0.0;  // wrapped to [0, pi]
  double max_residual = 0.0;
  std::string message;
};

RootDiagnostics validate_roots(const EllipticPolynomial& p, const RootSet& rs,
                               double residual_tol = 1e-10);

}  // namespace kostlan
