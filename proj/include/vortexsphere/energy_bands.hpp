#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vortexsphere/hamiltonian.hpp"

namespace vortex {

/// Quasi-uniform sphere grid (golden-angle spiral).
std::vector<Vec3> fibonacci_lattice(int n);

struct InnerMinResult {
  double value = 0.0;          // best energy found (upper bound of the min)
  Configuration argmin;        // full configuration attaining it
  int converged_starts = 0;
  double dispersion = 0.0;     // split-half disagreement of the minimum
  bool collision_adjacent = false;  // a solve terminated within chord 1e-6
};

/// Multistart local minimization of the energy over the other n-1 vortices
/// with vortex k pinned at eta. Positive vorticities only (the energy is
/// bounded below); returns the best value found, an upper-bound estimate of
/// the true inner minimum.
InnerMinResult inner_min(const Vec3& eta, int k, const VorticityVector& gamma,
                         const MetricContext& ctx, int starts, uint64_t seed);

struct BandReport {
  int k = 0;
  double c1 = 0.0;  // min over grid of inner minima (upper bound of true min)
  double c2 = 0.0;  // max over grid of inner minima (lower bound of true max)
  Vec3 argmin_point = Vec3::UnitZ();  // eta attaining c1
  Vec3 argmax_point = Vec3::UnitZ();  // eta attaining c2
  int grid_size = 0;
  int starts = 0;
  double dispersion = 0.0;  // max split-half disagreement over nodes
  std::vector<Vec3> nodes;
  std::vector<double> node_values;
};

/// Evaluates inner_min over a Fibonacci lattice and polishes the outer
/// extremizers with a local pattern search. Reported c1/c2 are grid-certified
/// bounds, not certified global extrema.
BandReport c1_c2(int k, const VorticityVector& gamma, const MetricContext& ctx,
                 int grid_size, int starts, uint64_t seed);

struct SeparationResult {
  std::optional<Vec3> point;  // a grid point z_c with inner_min(z_c) > c
  bool vacuous = false;       // c below every inner minimum (c < c1)
  double inner_value = 0.0;   // re-evaluated inner_min at the returned point
};

/// Searches the band report's grid for a slice point whose inner minimum
/// exceeds c; the winner is re-verified by a fresh inner solve.
SeparationResult separation_check(double c, int k,
                                  const VorticityVector& gamma,
                                  const MetricContext& ctx,
                                  const BandReport& report, uint64_t seed);

}  // namespace vortex
