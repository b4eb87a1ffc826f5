#include "kostlan/divided_difference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kostlan/error.hpp"

namespace kostlan {

AnalyticFunction AnalyticFunction::polynomial(std::vector<cplx> c) {
  AnalyticFunction f;
  f.value = [c](cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  f.taylor = [c](cplx z, int order) {
    // Repeated synthetic division yields the Taylor coefficients at z.
    std::vector<cplx> work = c;
    std::vector<cplx> out(static_cast<std::size_t>(order) + 1, 0.0);
    const int deg = static_cast<int>(work.size()) - 1;
    for (int k = 0; k <= order && k <= deg; ++k) {
      cplx acc = 0.0;
      for (int j = deg; j >= k; --j) {
        acc = acc * z + work[j];
        work[j] = acc;
      }
      out[k] = work[k];
    }
    return out;
  };
  return f;
}

AnalyticFunction AnalyticFunction::exponential(cplx scale) {
  AnalyticFunction f;
  f.value = [scale](cplx z) { return std::exp(scale * z); };
  f.taylor = [scale](cplx z, int order) {
    std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
    cplx t = std::exp(scale * z);
    for (int k = 0; k <= order; ++k) {
      out[k] = t;
      t *= scale / static_cast<double>(k + 1);
    }
    return out;
  };
  return f;
}

AnalyticFunction AnalyticFunction::entire(std::function<cplx(cplx)> g, double radius) {
  AnalyticFunction f;
  f.value = g;
  f.taylor = [g, radius](cplx z, int order) {
    const int nodes = std::max(64, 4 * (order + 1));
    std::vector<cplx> out(static_cast<std::size_t>(order) + 1, 0.0);
    for (int q = 0; q < nodes; ++q) {
      const double phi = 2.0 * std::numbers::pi * q / nodes;
      const cplx e = std::polar(1.0, phi);
      const cplx v = g(z + radius * e);
      cplx ek = 1.0;
      for (int k = 0; k <= order; ++k) {
        out[k] += v * std::conj(ek);
        ek *= e;
      }
    }
    double rk = 1.0;
    for (int k = 0; k <= order; ++k) {
      out[k] /= nodes * rk;
      rk *= radius;
    }
    return out;
  };
  return f;
}

DividedDiffContext divided_difference_table(const AnalyticFunction& f, std::vector<cplx> pts) {
  if (pts.empty()) throw ConfigError("divided difference needs at least one point");
  // Group equal points together, keeping first-appearance order otherwise.
  std::vector<cplx> grouped;
  std::vector<char> used(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = i; j < pts.size(); ++j) {
      if (!used[j] && pts[j] == pts[i]) {
        grouped.push_back(pts[j]);
        used[j] = 1;
      }
    }
  }
  const int m = static_cast<int>(grouped.size());
  DividedDiffContext ctx;
  ctx.points = grouped;
  ctx.newton_table.resize(static_cast<std::size_t>(m));
  ctx.newton_table[0].resize(static_cast<std::size_t>(m));
  std::vector<std::vector<cplx>> taylor_cache(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) ctx.newton_table[0][i] = f.value(grouped[i]);
  for (int k = 1; k < m; ++k) {
    auto& row = ctx.newton_table[k];
    const auto& prev = ctx.newton_table[k - 1];
    row.resize(static_cast<std::size_t>(m - k));
    for (int i = 0; i + k < m; ++i) {
      const cplx den = grouped[i + k] - grouped[i];
      if (den == 0.0) {
        auto& tc = taylor_cache[i];
        if (static_cast<int>(tc.size()) <= k) tc = f.taylor(grouped[i], m - 1);
        row[i] = tc[k];
      } else {
        row[i] = (prev[i + 1] - prev[i]) / den;
      }
    }
  }
  cplx c = 0.0;
  for (const cplx& z : grouped) c += z;
  c /= static_cast<double>(m);
  double r = 0.0;
  for (const cplx& z : grouped) r = std::max(r, std::abs(z - c));
  ctx.contour_center = c;
  ctx.contour_radius = std::max(2.0 * r, r + 0.5);
  return ctx;
}

cplx divided_difference(const AnalyticFunction& f, const std::vector<cplx>& points) {
  return divided_difference_table(f, points).value();
}

ContourResult divided_difference_contour(const std::function<cplx(cplx)>& f,
                                         const std::vector<cplx>& points, cplx center,
                                         double radius) {
  double far = 0.0;
  for (const cplx& z : points) far = std::max(far, std::abs(z - center));
  if (radius <= 0.0) radius = std::max(2.0 * far, far + 0.5);
  for (const cplx& z : points) {
    if (std::abs(std::abs(z - center) - radius) < 1e-6) radius = std::max(2.0 * far, far + 0.5);
  }
  if (radius <= far) radius = std::max(2.0 * far, far + 0.5);
  ContourResult res;
  res.radius = radius;
  auto trapezoid = [&](int nodes) {
    cplx acc = 0.0;
    for (int q = 0; q < nodes; ++q) {
      const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * q / nodes);
      const cplx s = center + radius * e;
      cplx den = 1.0;
      for (const cplx& z : points) den *= s - z;
      const cplx term = f(s) * (radius * e) / den;
      res.scale = std::max(res.scale, std::abs(term));
      acc += term;
    }
    return acc / static_cast<double>(nodes);
  };
  int nodes = 256;
  cplx prev = trapezoid(nodes);
  for (int doubling = 0; doubling < 10; ++doubling) {
    nodes *= 2;
    const cplx cur = trapezoid(nodes);
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= std::max(1e-10 * std::abs(cur), 1e-14 * res.scale)) {
      res.converged = true;
      break;
    }
  }
  res.value = prev;
  res.nodes = nodes;
  return res;
}

Eigen::MatrixXcd dd_matrix(const std::vector<cplx>& z) {
  const int m = static_cast<int>(z.size());
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    cplx prod = 1.0;
    for (int k = 0; k <= i; ++k) {
      mat(i, k) = prod;
      prod *= z[i] - z[k];
    }
  }
  return mat;
}

std::vector<cplx> newton_coefficients(const std::vector<cplx>& values,
                                      const std::vector<cplx>& z) {
  const std::size_t m = z.size();
  std::vector<cplx> t = values;
  std::vector<cplx> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = t[0];
    for (std::size_t i = 0; i + k + 1 < m; ++i) t[i] = (t[i + 1] - t[i]) / (z[i + k + 1] - z[i]);
  }
  return out;
}

std::vector<cplx> complete_homogeneous(const std::vector<cplx>& points, int degree) {
  // h_d(z_1..z_a) = h_d(z_1..z_{a-1}) + z_a h_{d-1}(z_1..z_a)
  std::vector<cplx> h(static_cast<std::size_t>(degree) + 1, 0.0);
  h[0] = 1.0;
  for (const cplx& z : points) {
    for (int d = 1; d <= degree; ++d) h[d] += z * h[d - 1];
  }
  return h;
}

Eigen::MatrixXcd gef_divided_difference_covariance(const std::vector<cplx>& z) {
  const int m = static_cast<int>(z.size());
  double rmax = 0.0;
  for (const cplx& p : z) rmax = std::max(rmax, std::abs(p));
  // Terms decay like (m rmax)^{2k} / k!; truncate well past the peak.
  const int kmax = static_cast<int>(std::ceil(4.0 * (m + 1) * (rmax * rmax + 1.0))) + 60;
  std::vector<std::vector<cplx>> h(static_cast<std::size_t>(m));
  for (int a = 1; a <= m; ++a) {
    h[a - 1] = complete_homogeneous(std::vector<cplx>(z.begin(), z.begin() + a), kmax);
  }
  Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(m, m);
  for (int k = 0; k <= kmax; ++k) {
    const double w = std::exp(-std::lgamma(k + 1.0));
    for (int a = 1; a <= m; ++a) {
      const int da = k - a + 1;
      if (da < 0) continue;
      for (int b = 1; b <= m; ++b) {
        const int db = k - b + 1;
        if (db < 0) continue;
        cov(a - 1, b - 1) += w * h[a - 1][da] * std::conj(h[b - 1][db]);
      }
    }
  }
  return cov;
}

}  // namespace kostlan
