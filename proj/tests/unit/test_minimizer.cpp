#include <gtest/gtest.h>

#include <cmath>

#include "kostlan/energy.hpp"
#include "kostlan/minimizer.hpp"
#include "kostlan/rng.hpp"
#include "kostlan/sphere.hpp"

using namespace kostlan;

namespace {

Vec3 normalized(Vec3 v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / r, v[1] / r, v[2] / r};
}

std::vector<Vec3> random_points(int n, std::uint64_t seed) {
  ComplexGaussianStream stream(seed, 0);
  const auto cfg = sample_uniform_configuration(n, stream);
  std::vector<Vec3> x;
  for (const auto& p : cfg.points) x.push_back(p.cartesian);
  return x;
}

}  // namespace

TEST(Gradient, CriticalConfigurations) {
  const std::vector<Vec3> antipodal{{0, 0, 1}, {0, 0, -1}};
  EXPECT_LT(gradient_norm(energy_gradient(antipodal)), 1e-14);
  const double s = std::sqrt(3.0) / 2;
  const std::vector<Vec3> triangle{{1, 0, 0}, {-0.5, s, 0}, {-0.5, -s, 0}};
  EXPECT_LT(gradient_norm(energy_gradient(triangle)), 1e-14);
  const std::vector<Vec3> tetra{normalized({1, 1, 1}), normalized({1, -1, -1}),
                                normalized({-1, 1, -1}), normalized({-1, -1, 1})};
  EXPECT_LT(gradient_norm(energy_gradient(tetra)), 1e-13);
}

TEST(Gradient, FiniteDifferenceOrder) {
  auto x = random_points(12, 3);
  const auto g = energy_gradient(x);
  ComplexGaussianStream s(4, 0);
  // tangent direction at each point
  std::vector<Vec3> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vec3 r{s.next_normal(), s.next_normal(), s.next_normal()};
    const double d = r[0] * x[i][0] + r[1] * x[i][1] + r[2] * x[i][2];
    for (int k = 0; k < 3; ++k) v[i][k] = r[k] - d * x[i][k];
  }
  double dir = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int k = 0; k < 3; ++k) dir += g[i][k] * v[i][k];
  auto moved = [&](double h) {
    std::vector<Vec3> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = normalized({x[i][0] + h * v[i][0], x[i][1] + h * v[i][1], x[i][2] + h * v[i][2]});
    return y;
  };
  auto err = [&](double h) {
    const double fd = (cartesian_energy(moved(h)) - cartesian_energy(moved(-h))) / (2 * h);
    return std::abs(fd - dir);
  };
  const double e1 = err(1e-3), e2 = err(5e-4);
  EXPECT_GT(std::log2(e1 / e2), 1.9);
}

TEST(Energy, CartesianMatchesPairwise) {
  const auto x = random_points(25, 5);
  const auto cfg = SphericalConfiguration::from_cartesian(x, ConfigSource::uniform);
  EXPECT_NEAR(cartesian_energy(x), pairwise_energy(cfg), 1e-10);
  ComplexGaussianStream s(6, 0);
  const auto t = random_isometry(s);
  EXPECT_NEAR(pairwise_energy(apply_isometry(t, cfg)), pairwise_energy(cfg), 1e-9);
}

TEST(Descent, SmallOptima) {
  for (int n : {2, 3}) {
    const auto start = SphericalConfiguration::from_cartesian(random_points(n, 10 + n), ConfigSource::uniform);
    const auto res = descend(start);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.final_state.energy, -n * std::log(double(n)), 1e-8);
    EXPECT_LT(res.max_norm_drift, 1e-12);
  }
}

TEST(Descent, Monotone) {
  const auto start = SphericalConfiguration::from_cartesian(random_points(30, 21), ConfigSource::uniform);
  DescentOptions o;
  o.max_iterations = 500;
  const auto res = descend(start, o);
  ASSERT_FALSE(res.trajectory.empty());
  for (std::size_t i = 1; i < res.trajectory.size(); ++i)
    EXPECT_LE(res.trajectory[i].energy, res.trajectory[i - 1].energy);
  EXPECT_LT(res.max_norm_drift, 1e-12);
}

TEST(Descent, OptimumStableUnderPerturbation) {
  const auto start = SphericalConfiguration::from_cartesian(random_points(12, 23), ConfigSource::uniform);
  const auto res = descend(start);
  ASSERT_TRUE(res.converged);
  EXPECT_LT(res.final_state.grad_norm, 1e-10 * 12);

  ComplexGaussianStream s(22, 0);
  std::vector<Vec3> bumped;
  for (const auto& p : res.final_state.config.points) {
    const auto& c = p.cartesian;
    bumped.push_back(normalized({c[0] + 1e-6 * s.next_normal(), c[1] + 1e-6 * s.next_normal(),
                                 c[2] + 1e-6 * s.next_normal()}));
  }
  EXPECT_GT(cartesian_energy(bumped), res.final_state.energy);
  const auto again = descend(SphericalConfiguration::from_cartesian(bumped, ConfigSource::refined));
  EXPECT_NEAR(again.final_state.energy, res.final_state.energy, 1e-8);
}

TEST(Descent, IsometryInvariantEnergy) {
  const auto start = SphericalConfiguration::from_cartesian(random_points(8, 31), ConfigSource::uniform);
  ComplexGaussianStream s(32, 0);
  const auto t = random_isometry(s);
  const auto a = descend(start);
  const auto b = descend(apply_isometry(t, start));
  EXPECT_NEAR(a.final_state.energy, b.final_state.energy, 1e-8);
}

TEST(Pipeline, EndsInsideBand) {
  DescentOptions o;
  o.max_iterations = 300;
  const auto rep = pipeline(100, 9, o);
  EXPECT_LT(rep.end_energy, rep.start_energy);
  EXPECT_GE(rep.end_energy, rep.reference.min_lower - 1.0);
  EXPECT_EQ(rep.n, 100);
}
