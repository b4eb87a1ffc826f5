#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kostlan/energy.hpp"
#include "kostlan/sphere.hpp"

namespace kostlan {

/// -sum_{i != j} log |x_i - x_j| for unit vectors.
double cartesian_energy(const std::vector<Vec3>& x);

/// Ambient gradient of the energy projected onto each tangent plane.
std::vector<Vec3> energy_gradient(const std::vector<Vec3>& x);
std::vector<Vec3> energy_gradient(const SphericalConfiguration& cfg);
double gradient_norm(const std::vector<Vec3>& g);

struct DescentOptions {
  int max_iterations = 20000;
  /// Stop when the gradient norm drops below grad_tol_per_point * n.
  double grad_tol_per_point = 1e-10;
  /// Zero means 1 / n.
  double initial_step = 0.0;
  int max_halvings = 60;
  bool record_trajectory = true;
};

struct DescentState {
  SphericalConfiguration config;
  double energy = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
  int iteration = 0;
};

struct TrajectoryRow {
  int iteration;
  double energy;
  double grad_norm;
  double step;
};

struct DescentResult {
  DescentState final_state;
  std::vector<TrajectoryRow> trajectory;
  bool converged = false;
  bool stagnated = false;
  double max_norm_drift = 0.0;
};

DescentResult descend(const SphericalConfiguration& start, const DescentOptions& opts = {});

struct PipelineReport {
  int n = 0;
  std::uint64_t seed = 0;
  double start_energy = 0.0;
  double end_energy = 0.0;
  ReferenceCurves reference{};
  DescentResult descent;
};

/// Sample, find roots, project and descend.
PipelineReport pipeline(int n, std::uint64_t seed, const DescentOptions& opts = {});

}  // namespace kostlan
