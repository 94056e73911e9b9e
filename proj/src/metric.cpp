#include "vortexsphere/metric.hpp"

#include "vortexsphere/random.hpp"

namespace vortex {

ConformalFactor random_conformal_factor(int L, double amplitude, Rng& rng) {
  ConformalFactor f(L);
  if (amplitude == 0.0 || L < 0) return f;
  std::normal_distribution<double> n(0.0, 1.0);
  for (int l = 1; l <= L; ++l) {
    double decay = 1.0 / ((1.0 + l) * (1.0 + l));
    for (int m = -l; m <= l; ++m) f.at(l, m) = decay * n(rng);
  }
  // Rescale to the requested sup-norm amplitude, estimated on a coarse grid.
  double peak = 0.0;
  QuadratureGrid grid = QuadratureGrid::for_degree(2 * L + 8);
  for (const Vec3& p : grid.points)
    peak = std::max(peak, std::abs(sh_evaluate(f, p)));
  if (peak > 0.0) f.coeffs *= amplitude / peak;
  return f;
}

}  // namespace vortex
