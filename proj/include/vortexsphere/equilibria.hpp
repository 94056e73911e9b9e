#pragma once

#include <cstdint>
#include <vector>

#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/hamiltonian.hpp"

namespace vortex {

struct FixedPointReport {
  Configuration z;
  double grad_norm = 0.0;
  double energy = 0.0;
  Eigen::VectorXd hessian_eigenvalues;  // ascending, 2n values
  int kernel_dim = 0;                   // |λ| < 1e-6 · max|λ|
  int morse_index = 0;                  // λ < -1e-6 · max|λ|
};

struct FixedPointSearch {
  std::vector<FixedPointReport> points;  // sorted by energy, deduplicated
  std::vector<int> basin_hits;           // converged starts per point
  int failed_starts = 0;
};

/// Multistart damped Newton on the frame gradient. Starts are uniform
/// product samples rejecting pairs closer than chord 0.2; runs that fall into
/// the collision funnel (pair chord < 1e-6) or fail to converge are dropped
/// and counted. Results are deduplicated up to permutations of equal-Γ
/// indices at chord tolerance 1e-6 and sorted by energy.
FixedPointSearch find_fixed_points(const VorticityVector& gamma,
                                   const MetricContext& ctx, int starts,
                                   uint64_t seed, double newton_tol = 1e-11);

/// Newton polish from a given configuration (used for SO(3)-closure checks).
/// Returns true on convergence and overwrites z and iters.
bool newton_polish(Configuration& z, const VorticityVector& gamma,
                   const MetricContext& ctx, double newton_tol, int max_iters,
                   int* iters_used = nullptr);

/// Spectral analysis of the Hessian at z (eigenvalues / kernel / index).
FixedPointReport analyze_point(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx);

/// Γ(Λ) = Σ_{i≠j∈Λ} Γi Γj (ordered pairs) for one index subset.
double cluster_sum(const VorticityVector& gamma,
                   const std::vector<int>& subset);

struct ClusterVorticity {
  std::vector<int> indices;
  double value = 0.0;
  bool degenerate = false;  // |Γ(Λ)| < 1e-12
};

struct VorticityDegeneracyReport {
  std::vector<ClusterVorticity> subsets;  // all |Λ| >= 2
  bool non_degenerate = true;             // every Γ(Λ) nonzero
};

/// Enumerates all 2^n subsets (n <= 20 guard) and flags zero cluster sums.
VorticityDegeneracyReport cluster_vorticity_sums(const VorticityVector& gamma);

struct ClusterEvent {
  double t_first = 0.0;
  double t_last = 0.0;
  std::vector<int> indices;
  double gamma_sum = 0.0;  // Γ(Λ)
};

/// Scans trajectory samples for maximal index subsets whose pairwise chords
/// all fall below eps (connected epsilon-components that are cliques);
/// consecutive samples with the same subset merge into one event.
std::vector<ClusterEvent> cluster_monitor(const Trajectory& traj,
                                          const VorticityVector& gamma,
                                          double eps);

}  // namespace vortex
