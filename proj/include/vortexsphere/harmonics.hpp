#pragma once

#include <Eigen/Dense>

#include "vortexsphere/geometry.hpp"

namespace vortex {

// Real spherical harmonic convention used throughout this project
// (documented once, here):
//   * fully normalized: ∫_{S^2} Y_{l,m} Y_{l',m'} dΩ = δ_{ll'} δ_{mm'}
//     with dΩ the round area element (total 4π);
//   * Condon–Shortley-free: the sectoral seed is (2m-1)!! (positive);
//   * m > 0 are the cos(mφ) harmonics, m < 0 the sin(|m|φ) harmonics,
//     each carrying the √2 factor;
//   * Y_{0,0} = 1/√(4π), Y_{1,0} = √(3/4π) z, Y_{1,1} = √(3/4π) x,
//     Y_{1,-1} = √(3/4π) y.
// The round Laplace-Beltrami operator acts as Δ Y_{l,m} = -l(l+1) Y_{l,m}.

/// Flat index of (l, m) in a degree-major coefficient vector.
inline int sh_index(int l, int m) { return l * l + l + m; }

/// Number of coefficients for band limit L.
inline int sh_count(int L) { return (L + 1) * (L + 1); }

/// Band-limited real scalar field on the sphere; defines g = e^{2ρ} g0.
struct ConformalFactor {
  int L = 0;
  Eigen::VectorXd coeffs;  // (L+1)^2 entries, sh_index packing

  ConformalFactor() : coeffs(Eigen::VectorXd::Zero(1)) {}
  explicit ConformalFactor(int band)
      : L(band), coeffs(Eigen::VectorXd::Zero(sh_count(band))) {
    if (band < 0) throw std::invalid_argument("ConformalFactor: L < 0");
  }
  ConformalFactor(int band, Eigen::VectorXd c) : L(band), coeffs(std::move(c)) {
    if (coeffs.size() != sh_count(band))
      throw std::invalid_argument("ConformalFactor: coefficient count");
  }

  double& at(int l, int m) { return coeffs[sh_index(l, m)]; }
  double at(int l, int m) const { return coeffs[sh_index(l, m)]; }
  bool is_zero() const { return coeffs.isZero(0.0); }
};

/// Σ c_{l,m} Y_{l,m}(p).
double sh_evaluate(const ConformalFactor& f, const Vec3& p);

/// Round-metric surface gradient of the field at p; tangent to the sphere.
Vec3 sh_surface_gradient(const ConformalFactor& f, const Vec3& p);

/// Value and surface gradient in one pass.
std::pair<double, Vec3> sh_evaluate_with_gradient(const ConformalFactor& f,
                                                  const Vec3& p);

/// All basis values Y_{l,m}(p) for l <= L, written into `out` (sh_index
/// packing, resized as needed).
void sh_basis(int L, const Vec3& p, Eigen::VectorXd& out);

}  // namespace vortex
