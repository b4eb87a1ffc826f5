#include "kostlan/sphere.hpp"

#include <cmath>
#include <numbers>

#include "kostlan/error.hpp"

namespace kostlan {

cplx ExtendedComplex::value() const {
  if (inf_) throw ConfigError("point at infinity has no planar value");
  return z_;
}

SpherePoint project(const ExtendedComplex& z) {
  SpherePoint p;
  p.planar = z;
  if (z.is_infinite()) {
    p.cartesian = {0.0, 0.0, 1.0};
    return p;
  }
  const cplx v = z.value();
  const double r2 = std::norm(v);
  if (r2 <= 1.0) {
    const double d = 1.0 + r2;
    p.cartesian = {2.0 * v.real() / d, 2.0 * v.imag() / d, (r2 - 1.0) / d};
  } else {
    // Same map written in w = 1/z, which keeps |z|^2 from overflowing.
    const cplx w = 1.0 / v;
    const double s2 = std::norm(w);
    const double d = 1.0 + s2;
    p.cartesian = {2.0 * w.real() / d, -2.0 * w.imag() / d, (1.0 - s2) / d};
  }
  return p;
}

ExtendedComplex unproject(const Vec3& v) {
  const double x = v[0], y = v[1], z = v[2];
  if (z <= 0.0) return cplx(x, y) / (1.0 - z);
  const cplx den(x, -y);
  if (den == 0.0) return ExtendedComplex::infinity();
  return (1.0 + z) / den;
}

SpherePoint from_cartesian(const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("cartesian point must be nonzero and finite");
  const Vec3 u{v[0] / r, v[1] / r, v[2] / r};
  return {unproject(u), u};
}

double chordal(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double spherical_distance(const ExtendedComplex& z, const ExtendedComplex& w) {
  if (z.is_infinite() && w.is_infinite()) return 0.0;
  if (z.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(w.value()));
  if (w.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(z.value()));
  const cplx a = z.value(), b = w.value();
  if (std::norm(a) <= 1.0 && std::norm(b) <= 1.0) {
    return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
  }
  return chordal(project(z).cartesian, project(w).cartesian);
}

double spherical_distance(const SpherePoint& a, const SpherePoint& b) {
  return spherical_distance(a.planar, b.planar);
}

void Isometry::validate() const {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12) {
    throw ConfigError("isometry requires |alpha|^2 + |beta|^2 = 1");
  }
}

Isometry Isometry::compose(const Isometry& o) const {
  // Matrices [[a, b], [-conj b, conj a]] multiply within the same family.
  return {alpha * o.alpha - beta * std::conj(o.beta), alpha * o.beta + beta * std::conj(o.alpha)};
}

ExtendedComplex apply_isometry(const Isometry& t, const ExtendedComplex& z) {
  if (z.is_infinite()) {
    if (t.beta == 0.0) return ExtendedComplex::infinity();
    return -t.alpha / std::conj(t.beta);
  }
  const cplx v = z.value();
  cplx num, den;
  if (std::norm(v) <= 1.0) {
    num = t.alpha * v + t.beta;
    den = std::conj(t.alpha) - std::conj(t.beta) * v;
  } else {
    const cplx w = 1.0 / v;
    num = t.alpha + t.beta * w;
    den = std::conj(t.alpha) * w - std::conj(t.beta);
  }
  if (den == 0.0) return ExtendedComplex::infinity();
  return num / den;
}

SpherePoint apply_isometry(const Isometry& t, const SpherePoint& p) {
  return project(apply_isometry(t, p.planar));
}

Isometry random_isometry(ComplexGaussianStream& stream) {
  cplx a = stream.next_complex();
  cplx b = stream.next_complex();
  const double r = std::sqrt(std::norm(a) + std::norm(b));
  return {a / r, b / r};
}

cplx sample_mu(ComplexGaussianStream& stream) {
  // Ratio of independent complex Gaussians is mu-distributed.
  const cplx a = stream.next_complex();
  const cplx b = stream.next_complex();
  return a / b;
}

double mu_density(cplx z) {
  const double d = 1.0 + std::norm(z);
  return 1.0 / (std::numbers::pi * d * d);
}

std::string_view to_string(ConfigSource s) {
  switch (s) {
    case ConfigSource::roots: return "roots";
    case ConfigSource::uniform: return "uniform";
    case ConfigSource::refined: return "refined";
    case ConfigSource::explicit_points: return "explicit";
  }
  return "explicit";
}

SphericalConfiguration SphericalConfiguration::from_planar(const std::vector<cplx>& zs,
                                                           ConfigSource src) {
  SphericalConfiguration cfg;
  cfg.source = src;
  cfg.points.reserve(zs.size());
  for (const cplx& z : zs) cfg.points.push_back(project(z));
  return cfg;
}

SphericalConfiguration SphericalConfiguration::from_cartesian(const std::vector<Vec3>& vs,
                                                              ConfigSource src) {
  SphericalConfiguration cfg;
  cfg.source = src;
  cfg.points.reserve(vs.size());
  for (const Vec3& v : vs) cfg.points.push_back(kostlan::from_cartesian(v));
  return cfg;
}

void SphericalConfiguration::validate() const {
  for (const auto& p : points) {
    const auto& c = p.cartesian;
    if (!std::isfinite(c[0]) || !std::isfinite(c[1]) || !std::isfinite(c[2])) {
      throw ConfigError("configuration contains a non-finite coordinate");
    }
    if (std::abs(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] - 1.0) > 1e-12) {
      throw ConfigError("configuration point is off the unit sphere");
    }
  }
}

SphericalConfiguration sample_uniform_configuration(int n, ComplexGaussianStream& stream) {
  std::vector<cplx> zs(static_cast<std::size_t>(n));
  for (auto& z : zs) z = sample_mu(stream);
  return SphericalConfiguration::from_planar(zs, ConfigSource::uniform);
}

SphericalConfiguration apply_isometry(const Isometry& t, const SphericalConfiguration& cfg) {
  SphericalConfiguration out;
  out.source = cfg.source;
  out.points.reserve(cfg.points.size());
  for (const auto& p : cfg.points) out.points.push_back(apply_isometry(t, p));
  return out;
}

}  // namespace kostlan
