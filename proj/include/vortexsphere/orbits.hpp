#pragma once

#include <optional>
#include <vector>

#include "vortexsphere/dynamics.hpp"

namespace vortex {

/// Affine section on one vortex: crossings of normal · s_vortex = offset
/// with increasing orientation (d/dt of the value positive).
struct Section {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;
  int vortex = 0;
};

/// Default section through the initial state of vortex 0: the plane through
/// its current position whose normal is its initial velocity direction.
Section default_section(const Configuration& z, const VorticityVector& gamma,
                        const MetricContext& ctx);

enum class ReturnStatus { Ok, NoReturn, Tangential };

struct PoincareReturn {
  Configuration state;
  double time = 0.0;
  ReturnStatus status = ReturnStatus::Ok;
};

/// Integrates until the section condition recrosses with matching
/// orientation; the event time is bisected to 1e-10. Throws if the flow is
/// not transverse to the section at the start (e.g. a fixed point).
PoincareReturn poincare_return(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx,
                               const Section& section,
                               const IntegratorSettings& settings,
                               double time_cap);

struct PeriodicOrbit {
  Configuration z0;
  double T = 0.0;
  double residual = 0.0;  // |phi_T(z0) - z0|
  double energy = 0.0;
  std::vector<double> floquet_moduli;
  bool converged = false;
  int iters = 0;
};

/// Newton on the shooting map (z, T) -> phi_T(z) - z in tangent-frame
/// coordinates, with a section phase condition pinning time translation.
PeriodicOrbit refine_periodic(const Configuration& z_guess, double T_guess,
                              const VorticityVector& gamma,
                              const MetricContext& ctx, double tol,
                              const IntegratorSettings& settings);

/// Checks z_{i-1}(t) = z_i(t + T/n) cyclically at `samples` equispaced
/// phases, in chord distance.
bool is_choreography(const PeriodicOrbit& orbit, const VorticityVector& gamma,
                     const MetricContext& ctx, double tol, int samples = 64);

struct PerverseReport {
  bool applicable = false;    // false when all vorticities are identical
  double quadratic_form = 0.0;  // Σ_{i≠j} Γ̃i Γ̃j = -Σ Γ̃i² (Γ̃ = Γ - Γ̄)
  double min_grad_norm = 0.0;  // over sampled orbit configurations
  double max_grad_norm = 0.0;
  std::vector<int> skipped;   // indices with Γi = Γ̄ (excluded from the test)
  bool refuted = false;       // min_grad_norm > 1e3 · tol
};

/// Evaluates the reduced-vorticity gradient (vorticities Γi - Γ̄, mean
/// removed) along the orbit: a choreography would force it to vanish, so a
/// strictly positive lower bound certifies the orbit is not one.
PerverseReport perverse_test(const PeriodicOrbit& orbit,
                             const VorticityVector& gamma,
                             const MetricContext& ctx, double tol,
                             int samples = 16);

}  // namespace vortex
