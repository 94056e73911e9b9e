#pragma once

#include <Eigen/Dense>

#include "vortexsphere/harmonics.hpp"
#include "vortexsphere/quadrature.hpp"

namespace vortex {

/// Quadrature projection of a pointwise field onto harmonics up to band L.
template <typename F>
ConformalFactor project_to_band(F&& f, int L, const QuadratureGrid& grid) {
  ConformalFactor out(L);
  Eigen::VectorXd basis;
  for (int i = 0; i < grid.size(); ++i) {
    const Vec3& p = grid.points[static_cast<size_t>(i)];
    sh_basis(L, p, basis);
    out.coeffs += grid.weights[static_cast<size_t>(i)] * f(p) * basis;
  }
  return out;
}

/// Coefficients of Δ_{g0}^{-1} f on the zero-mean complement: (l,m) entry
/// maps to -c_{l,m}/(l(l+1)) for l >= 1; the l = 0 component is projected
/// out. Sign convention: Δ_{g0} Y_{l,m} = -l(l+1) Y_{l,m}.
ConformalFactor inv_laplacian_round(const ConformalFactor& f);

/// Spectral application of Δ_{g0}: coefficient (l,m) -> -l(l+1) c_{l,m}.
ConformalFactor laplacian_round(const ConformalFactor& f);

/// V_g = ∫ e^{2ρ} dΩ over the given grid.
double metric_volume(const ConformalFactor& rho, const QuadratureGrid& grid);

/// Ascending eigenvalues of -Δ_g for g = e^{2ρ} g0.
struct SpectrumReport {
  Eigen::VectorXd eigenvalues;
  int count = 0;
  int band_limit = 0;  // Galerkin band limit used
};

/// Smallest k eigenvalues of -Δ_g from the generalized Galerkin problem
/// -Δ_{g0} u = λ e^{2ρ} u in the harmonic basis up to L_solve: stiffness
/// diag(l(l+1)), mass = quadrature Galerkin matrix of multiplication by the
/// band-limited projection of e^{2ρ}. Throws if k exceeds the basis size or
/// the mass matrix fails to be positive definite (insufficient quadrature).
SpectrumReport laplace_spectrum(const ConformalFactor& rho, int k,
                                int L_solve);

/// Band limit used for projections of e^{2ρ} derived from a band-ρ input.
inline int aux_band_limit(int rho_band) { return 2 * rho_band + 8; }

}  // namespace vortex
