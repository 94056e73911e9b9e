#pragma once

#include <vector>

#include "vortexsphere/geometry.hpp"
#include "vortexsphere/metric.hpp"

namespace vortex {

struct EnergyReport {
  double H = 0.0;
  double interaction = 0.0;  // pairwise chord-log part
  double self = 0.0;         // conformal (metric) part
};

/// Round-sphere n-vortex energy -(1/4π) Σ_{i<j} Γi Γj log l_ij^2 with l_ij
/// the chord length; no additive constant. Throws on (near-)collisions.
double energy_round(const Configuration& z, const VorticityVector& gamma);

/// Energy on g = e^{2ρ} g0:
///   H_g = H_round + (1/2π) Σ Γi² ρ(z_i) - (ΣΓ / V_g) Σ Γi aux(z_i),
/// aux = Δ_{g0}^{-1} e^{2ρ}. Identical to energy_round when ρ = 0.
EnergyReport energy(const Configuration& z, const VorticityVector& gamma,
                    const MetricContext& ctx);

/// Riemannian-embedding gradient: one tangent 3-vector per vortex whose dot
/// product with a tangent displacement gives the directional derivative of
/// the energy.
std::vector<Vec3> grad(const Configuration& z, const VorticityVector& gamma,
                       const MetricContext& ctx);

/// Round part of the gradient only (used by integrators when ρ = 0 and by
/// the Hessian assembly).
std::vector<Vec3> grad_round(const Configuration& z,
                             const VorticityVector& gamma);

/// Frame coordinates: stack the per-vortex tangent-frame components of a
/// list of tangent vectors into a 2n vector (frames from tangent_basis).
Eigen::VectorXd to_frame_coords(const Configuration& z,
                                const std::vector<Vec3>& tangents);

/// Move each vortex by its frame-coordinate displacement and renormalize.
Configuration retract(const Configuration& z, const Eigen::VectorXd& x);

/// 2n x 2n symmetric second derivative of the energy in tangent-frame
/// coordinates of the retraction z -> retract(z, x) at x = 0. The chord-log
/// part is assembled analytically; the conformal part by central finite
/// differences of its frame gradient (step 1e-5). Chart-honest at critical
/// points; off critical points this is the frame-coordinate second
/// derivative for the fixed frame rule of tangent_basis.
Eigen::MatrixXd hessian(const Configuration& z, const VorticityVector& gamma,
                        const MetricContext& ctx);

/// Chord distance below which configurations are rejected as collisions.
inline constexpr double kCollisionEps = 1e-14;

}  // namespace vortex
