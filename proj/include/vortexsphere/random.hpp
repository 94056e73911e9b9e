#pragma once

#include <random>

#include "vortexsphere/geometry.hpp"
#include "vortexsphere/harmonics.hpp"

namespace vortex {

using Rng = std::mt19937_64;

inline Vec3 random_sphere_point(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  while (true) {
    Vec3 v(n(rng), n(rng), n(rng));
    if (v.norm() > 1e-8) return renormalized(v);
  }
}

/// Uniform product sample rejecting configurations with a pair closer than
/// min_chord.
inline Configuration random_configuration(int n, Rng& rng,
                                          double min_chord = 0.2) {
  while (true) {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(random_sphere_point(rng));
    Configuration z(std::move(pts));
    if (z.min_pairwise_chord() > min_chord) return z;
  }
}

inline Vec3 random_tangent(const Vec3& p, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  while (true) {
    Vec3 v = tangent_project(p, Vec3(n(rng), n(rng), n(rng)));
    if (v.norm() > 1e-8) return renormalized(v);
  }
}

inline Mat3 random_rotation(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  return axis_angle(random_sphere_point(rng), u(rng));
}

/// Band-limited conformal factor with i.i.d. coefficients scaled so that the
/// field amplitude is roughly `amplitude` (then clamped to it in sup norm by
/// rescaling against a coarse grid estimate).
ConformalFactor random_conformal_factor(int L, double amplitude, Rng& rng);

}  // namespace vortex
