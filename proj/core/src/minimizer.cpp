#include "kostlan/minimizer.hpp"

#include <cmath>

#include "kostlan/error.hpp"
#include "kostlan/polymodel.hpp"
#include "kostlan/roots.hpp"

namespace kostlan {
namespace {

std::vector<Vec3> cartesian_of(const SphericalConfiguration& cfg) {
  std::vector<Vec3> x;
  x.reserve(cfg.size());
  for (const auto& p : cfg.points) x.push_back(p.cartesian);
  return x;
}

}  // namespace

double cartesian_energy(const std::vector<Vec3>& x) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i][0] - x[j][0], dy = x[i][1] - x[j][1], dz = x[i][2] - x[j][2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (!(d2 >= kCoincidenceThreshold * kCoincidenceThreshold)) {
        throw CoincidentPointsError(i, j, std::sqrt(d2));
      }
      const double y = -std::log(d2) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

std::vector<Vec3> energy_gradient(const std::vector<Vec3>& x) {
  const std::size_t n = x.size();
  std::vector<Vec3> g(n, Vec3{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i][0] - x[j][0], dy = x[i][1] - x[j][1], dz = x[i][2] - x[j][2];
      const double d2 = dx * dx + dy * dy + dz * dz;
      if (!(d2 >= kCoincidenceThreshold * kCoincidenceThreshold)) {
        throw CoincidentPointsError(i, j, std::sqrt(d2));
      }
      const double w = 2.0 / d2;
      g[i][0] -= w * dx;
      g[i][1] -= w * dy;
      g[i][2] -= w * dz;
      g[j][0] += w * dx;
      g[j][1] += w * dy;
      g[j][2] += w * dz;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double dot = g[i][0] * x[i][0] + g[i][1] * x[i][1] + g[i][2] * x[i][2];
    for (int k = 0; k < 3; ++k) g[i][k] -= dot * x[i][k];
  }
  return g;
}

std::vector<Vec3> energy_gradient(const SphericalConfiguration& cfg) {
  return energy_gradient(cartesian_of(cfg));
}

double gradient_norm(const std::vector<Vec3>& g) {
  double s = 0.0;
  for (const auto& v : g) s += v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::sqrt(s);
}

DescentResult descend(const SphericalConfiguration& start, const DescentOptions& opts) {
  start.validate();
  const std::size_t n = start.size();
  std::vector<Vec3> x = cartesian_of(start);
  DescentResult res;
  double energy = cartesian_energy(x);
  std::vector<Vec3> g = energy_gradient(x);
  double gn = gradient_norm(g);
  const double tol = opts.grad_tol_per_point * static_cast<double>(n);
  const double step0 = opts.initial_step > 0.0 ? opts.initial_step : 1.0 / std::max<std::size_t>(n, 1);
  double step = step0;
  int it = 0;
  if (opts.record_trajectory) res.trajectory.push_back({0, energy, gn, 0.0});
  std::vector<Vec3> trial(n);
  while (gn >= tol && it < opts.max_iterations) {
    bool accepted = false;
    step = step0;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        Vec3 y{x[i][0] - step * g[i][0], x[i][1] - step * g[i][1], x[i][2] - step * g[i][2]};
        const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
        trial[i] = {y[0] / r, y[1] / r, y[2] / r};
      }
      double e_trial;
      try {
        e_trial = cartesian_energy(trial);
      } catch (const CoincidentPointsError&) {
        step *= 0.5;
        continue;
      }
      if (e_trial < energy) {
        x.swap(trial);
        energy = e_trial;
        accepted = true;
        break;
      }
      // below the rounding floor of the energy, accept equal energy if the gradient shrinks
      if (e_trial == energy) {
        auto gt = energy_gradient(trial);
        if (gradient_norm(gt) < gn) {
          x.swap(trial);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.stagnated = true;
      break;
    }
    ++it;
    g = energy_gradient(x);
    gn = gradient_norm(g);
    for (const auto& v : x) {
      res.max_norm_drift =
          std::max(res.max_norm_drift, std::abs(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) - 1.0));
    }
    if (opts.record_trajectory) res.trajectory.push_back({it, energy, gn, step});
  }
  res.converged = gn < tol;
  res.final_state.config = SphericalConfiguration::from_cartesian(x, ConfigSource::refined);
  res.final_state.energy = energy;
  res.final_state.grad_norm = gn;
  res.final_state.step = step;
  res.final_state.iteration = it;
  return res;
}

PipelineReport pipeline(int n, std::uint64_t seed, const DescentOptions& opts) {
  PipelineReport r;
  r.n = n;
  r.seed = seed;
  const EllipticPolynomial p = sample_elliptic(n, seed, 0);
  const RootSet rs = find_roots(p);
  const auto cfg = SphericalConfiguration::from_planar(rs.roots, ConfigSource::roots);
  r.start_energy = pairwise_energy(cfg);
  r.descent = descend(cfg, opts);
  r.end_energy = r.descent.final_state.energy;
  r.reference = reference_curves(n);
  return r;
}

}  // namespace kostlan
