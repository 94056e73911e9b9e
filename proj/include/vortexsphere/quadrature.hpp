#pragma once

#include <vector>

#include "vortexsphere/geometry.hpp"

namespace vortex {

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials of
/// degree <= 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Product quadrature on the sphere: Gauss-Legendre in z = cos(theta) times
/// uniform nodes in phi. Exact (to roundoff) for integrands that are
/// polynomial of total spherical-harmonic degree <= exact_degree; weights sum
/// to 4π.
struct QuadratureGrid {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int n_theta = 0;
  int n_phi = 0;
  int exact_degree = 0;

  static QuadratureGrid for_degree(int degree);

  int size() const { return static_cast<int>(points.size()); }

  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i) acc += weights[static_cast<size_t>(i)] * f(points[static_cast<size_t>(i)]);
    return acc;
  }
};

}  // namespace vortex
