#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

#include "kostlan/rng.hpp"

namespace kostlan {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// A point of the extended complex plane; infinity is an explicit tag.
class ExtendedComplex {
 public:
  ExtendedComplex() = default;
  ExtendedComplex(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  static ExtendedComplex infinity() {
    ExtendedComplex e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const noexcept { return inf_; }
  /// Throws if infinite.
  cplx value() const;

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.z_ == b.z_);
  }

 private:
  cplx z_{};
  bool inf_ = false;
};

struct SpherePoint {
  ExtendedComplex planar;
  Vec3 cartesian{0.0, 0.0, -1.0};
};

/// 0 maps to the south pole (0,0,-1), infinity to the north pole.
SpherePoint project(const ExtendedComplex& z);
/// Normalizes v onto the unit sphere first.
SpherePoint from_cartesian(const Vec3& v);
ExtendedComplex unproject(const Vec3& v);
inline ExtendedComplex unproject(const SpherePoint& p) { return p.planar; }

double chordal(const Vec3& a, const Vec3& b);

double spherical_distance(const ExtendedComplex& z, const ExtendedComplex& w);
double spherical_distance(const SpherePoint& a, const SpherePoint& b);

/// tau(z) = (alpha z + beta) / (conj(alpha) - conj(beta) z)
struct Isometry {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  /// Throws ConfigError unless |alpha|^2 + |beta|^2 = 1 to 1e-12.
  void validate() const;
  Isometry inverse() const { return {std::conj(alpha), -beta}; }
  /// (this o other)(z) = this(other(z))
  Isometry compose(const Isometry& other) const;
};

ExtendedComplex apply_isometry(const Isometry& t, const ExtendedComplex& z);
SpherePoint apply_isometry(const Isometry& t, const SpherePoint& p);

Isometry random_isometry(ComplexGaussianStream& stream);

/// Planar coordinate of a uniform point of the sphere.
cplx sample_mu(ComplexGaussianStream& stream);
/// 1 / (pi (1 + |z|^2)^2)
double mu_density(cplx z);

enum class ConfigSource { roots, uniform, refined, explicit_points };
std::string_view to_string(ConfigSource s);

struct SphericalConfiguration {
  std::vector<SpherePoint> points;
  ConfigSource source = ConfigSource::explicit_points;

  std::size_t size() const noexcept { return points.size(); }
  static SphericalConfiguration from_planar(const std::vector<cplx>& zs, ConfigSource src);
  static SphericalConfiguration from_cartesian(const std::vector<Vec3>& vs, ConfigSource src);
  /// Throws ConfigError on NaN coordinates or non-unit vectors.
  void validate() const;
};

SphericalConfiguration sample_uniform_configuration(int n, ComplexGaussianStream& stream);
SphericalConfiguration apply_isometry(const Isometry& t, const SphericalConfiguration& cfg);

}  // namespace kostlan
