#pragma once

#include <string>
#include <vector>

#include "vortexsphere/hamiltonian.hpp"

namespace vortex {

enum class IntegratorMethod { ImplicitMidpoint, RK4 };

struct IntegratorSettings {
  double dt = 1e-3;
  IntegratorMethod method = IntegratorMethod::ImplicitMidpoint;
  double newton_tol = 1e-13;
  int max_newton_iters = 50;
  double collision_floor = 1e-8;
  int record_every = 1;  // store every k-th step in the trajectory
};

enum class TrajectoryStatus { Ok, CollisionFloor, NewtonNonConvergence };

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> states;
  std::vector<double> H_log;
  std::vector<Vec3> M_log;  // conserved only on the round metric
  TrajectoryStatus status = TrajectoryStatus::Ok;
  long fail_step = -1;

  bool ok() const { return status == TrajectoryStatus::Ok; }
  const Configuration& back() const { return states.back(); }
};

/// Hamiltonian vector field on g = e^{2ρ} g0 with the weighted area form
/// ⊕ Γi e^{2ρ} ω_{g0} (outward-normal orientation):
///   ds_i/dt = -(1 / (Γi e^{2ρ(s_i)})) s_i × ∇_i H.
/// Reversing the orientation of ω time-reverses every trajectory.
std::vector<Vec3> vector_field(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx);

/// Σ Γi s_i; conserved along round-metric trajectories.
Vec3 moment_map(const Configuration& z, const VorticityVector& gamma);

/// Advance from z0 to time T, logging t, state, H and the moment map every
/// `record_every` steps. The implicit midpoint solve keeps each vortex on
/// the sphere to solver tolerance; states are renormalized either way. A
/// pairwise chord below collision_floor truncates the trajectory with
/// status CollisionFloor.
Trajectory integrate(const Configuration& z0, const VorticityVector& gamma,
                     const MetricContext& ctx,
                     const IntegratorSettings& settings, double T);

/// Single integration step (exposed for shooting/event location).
Configuration step_once(const Configuration& z, const VorticityVector& gamma,
                        const MetricContext& ctx,
                        const IntegratorSettings& settings, double dt);

/// Integrate to exactly time t (full steps of settings.dt plus one fractional
/// step). Throws on collision-floor breach or non-convergence.
Configuration flow_to(const Configuration& z, const VorticityVector& gamma,
                      const MetricContext& ctx,
                      const IntegratorSettings& settings, double t);

}  // namespace vortex
