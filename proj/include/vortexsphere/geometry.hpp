#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vortex {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Unit vector in R^3 representing a point of the sphere. All constructors
/// and helpers renormalize, so downstream code may assume |p| = 1 to 1e-12.
inline Vec3 sphere_point(double x, double y, double z) {
  Vec3 p(x, y, z);
  double n = p.norm();
  if (n == 0.0) throw std::invalid_argument("sphere_point: zero vector");
  return p / n;
}

inline Vec3 renormalized(const Vec3& p) {
  double n = p.norm();
  if (n == 0.0) throw std::invalid_argument("renormalized: zero vector");
  return p / n;
}

/// Tangential projection of an ambient vector at base point p (|p| = 1).
inline Vec3 tangent_project(const Vec3& p, const Vec3& v) {
  return v - p.dot(v) * p;
}

inline double chord_distance(const Vec3& a, const Vec3& b) {
  return (a - b).norm();
}

/// Ordered list of nonzero circulations.
struct VorticityVector {
  std::vector<double> gammas;

  VorticityVector() = default;
  explicit VorticityVector(std::vector<double> g) : gammas(std::move(g)) {
    for (double gamma : gammas)
      if (gamma == 0.0)
        throw std::invalid_argument("VorticityVector: zero circulation");
  }

  int size() const { return static_cast<int>(gammas.size()); }
  double operator[](int i) const { return gammas[static_cast<size_t>(i)]; }
  double sum() const {
    double s = 0;
    for (double g : gammas) s += g;
    return s;
  }
  double mean() const { return gammas.empty() ? 0.0 : sum() / size(); }
};

/// Collision-free configuration of n vortices on the unit sphere.
struct Configuration {
  std::vector<Vec3> points;

  Configuration() = default;
  explicit Configuration(std::vector<Vec3> pts) : points(std::move(pts)) {
    for (auto& p : points) p = renormalized(p);
  }

  int size() const { return static_cast<int>(points.size()); }
  const Vec3& operator[](int i) const { return points[static_cast<size_t>(i)]; }
  Vec3& operator[](int i) { return points[static_cast<size_t>(i)]; }

  double min_pairwise_chord() const {
    double m = 2.0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        m = std::min(m, chord_distance(points[i], points[j]));
    return points.size() < 2 ? 2.0 : m;
  }

  bool collision_free(double floor = 0.0) const {
    return size() < 2 || min_pairwise_chord() > floor;
  }
};

/// Orthonormal frame (e1, e2, base), right-handed: e1 x e2 = base.
struct TangentBasis {
  Vec3 base;
  Vec3 e1;
  Vec3 e2;
};

/// Deterministic tangent frame: Gram-Schmidt of the coordinate axis least
/// aligned with p (ties broken by smallest index). Continuous away from the
/// loci where the selected axis switches.
inline TangentBasis tangent_basis(const Vec3& p_in) {
  Vec3 p = renormalized(p_in);
  Vec3 a = Vec3::Zero();
  double ax = std::abs(p.x()), ay = std::abs(p.y()), az = std::abs(p.z());
  if (ax <= ay && ax <= az)
    a = Vec3::UnitX();
  else if (ay <= az)
    a = Vec3::UnitY();
  else
    a = Vec3::UnitZ();
  Vec3 e1 = renormalized(a - p.dot(a) * p);
  Vec3 e2 = p.cross(e1);
  return TangentBasis{p, e1, e2};
}

/// Validates R^T R = I and det R = 1 (within tol), then applies the diagonal
/// action of R to every vortex.
inline Configuration rotate(const Mat3& R, const Configuration& z,
                            double tol = 1e-10) {
  if ((R.transpose() * R - Mat3::Identity()).norm() > tol ||
      std::abs(R.determinant() - 1.0) > tol)
    throw std::invalid_argument("rotate: matrix is not a rotation");
  std::vector<Vec3> pts;
  pts.reserve(z.points.size());
  for (const auto& p : z.points) pts.push_back(renormalized(R * p));
  return Configuration(std::move(pts));
}

/// Rotation matrix for angle theta about a (not necessarily unit) axis.
inline Mat3 axis_angle(const Vec3& axis, double theta) {
  return Eigen::AngleAxisd(theta, renormalized(axis)).toRotationMatrix();
}

/// The unique rotation carrying the pair (a1, a2) onto (b1, b2), defined when
/// both pairs share the same chord distance in (0, 2). Antipodal or coincident
/// pairs leave a one-parameter family and are rejected.
inline Mat3 rotation_between_pairs(const Vec3& a1, const Vec3& a2,
                                   const Vec3& b1, const Vec3& b2) {
  double la = (a1 - a2).norm(), lb = (b1 - b2).norm();
  if (std::abs(la - lb) > 1e-9)
    throw std::invalid_argument("rotation_between_pairs: chord mismatch");
  if (la <= 1e-12 || la >= 2.0 - 1e-12)
    throw std::invalid_argument(
        "rotation_between_pairs: pair coincident or antipodal");
  auto frame = [](const Vec3& u, const Vec3& v) {
    Mat3 F;
    F.col(0) = u;
    F.col(1) = renormalized(v - u.dot(v) * u);
    F.col(2) = F.col(0).cross(F.col(1));
    return F;
  };
  Mat3 A = frame(a1, a2), B = frame(b1, b2);
  return B * A.transpose();
}

/// (p, q) = (cos colatitude, longitude) chart used for the round-sphere
/// symplectic coordinates. q is atan2(y, x) in (-pi, pi].
inline std::pair<double, double> chart_pq(const Vec3& s) {
  return {s.z(), std::atan2(s.y(), s.x())};
}

/// Chart components (dp, dq) of a tangent vector v at s; undefined at poles.
inline std::pair<double, double> chart_velocity(const Vec3& s, const Vec3& v) {
  double rxy2 = s.x() * s.x() + s.y() * s.y();
  if (rxy2 < 1e-24)
    throw std::invalid_argument("chart_velocity: point at coordinate pole");
  return {v.z(), (s.x() * v.y() - s.y() * v.x()) / rxy2};
}

}  // namespace vortex
