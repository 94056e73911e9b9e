#include "vortexsphere/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  nodes.assign(static_cast<size_t>(n), 0.0);
  weights.assign(static_cast<size_t>(n), 0.0);
  // Newton iteration from the Chebyshev-like initial guess; exploit symmetry.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre P_n(x) and derivative by upward recurrence.
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<size_t>(i)] = -x;
    nodes[static_cast<size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[static_cast<size_t>(i)] = w;
    weights[static_cast<size_t>(n - 1 - i)] = w;
  }
}

QuadratureGrid QuadratureGrid::for_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("QuadratureGrid: degree < 0");
  QuadratureGrid g;
  g.exact_degree = degree;
  g.n_theta = degree / 2 + 1;
  g.n_phi = degree + 1;
  std::vector<double> z, w;
  gauss_legendre(g.n_theta, z, w);
  g.points.reserve(static_cast<size_t>(g.n_theta) * g.n_phi);
  g.weights.reserve(static_cast<size_t>(g.n_theta) * g.n_phi);
  const double wphi = 2.0 * M_PI / g.n_phi;
  for (int i = 0; i < g.n_theta; ++i) {
    double zi = z[static_cast<size_t>(i)];
    double r = std::sqrt(std::max(0.0, 1.0 - zi * zi));
    for (int j = 0; j < g.n_phi; ++j) {
      double phi = wphi * j;
      g.points.emplace_back(r * std::cos(phi), r * std::sin(phi), zi);
      g.weights.push_back(w[static_cast<size_t>(i)] * wphi);
    }
  }
  return g;
}

}  // namespace vortex
