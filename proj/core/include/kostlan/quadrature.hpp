#pragma once

#include <functional>
#include <vector>

namespace kostlan {

struct QuadOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  /// Sum of per-interval |Kronrod - Gauss| differences.
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b].
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {});
/// Same, with the initial partition given by sorted breakpoints.
QuadResult integrate(const Integrand& f, const std::vector<double>& breakpoints,
                     const QuadOptions& opts = {});

}  // namespace kostlan
