#include "vortexsphere/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

ConformalFactor inv_laplacian_round(const ConformalFactor& f) {
  ConformalFactor out(f.L);
  for (int l = 1; l <= f.L; ++l) {
    double inv = -1.0 / (static_cast<double>(l) * (l + 1));
    for (int m = -l; m <= l; ++m)
      out.coeffs[sh_index(l, m)] = inv * f.coeffs[sh_index(l, m)];
  }
  return out;
}

ConformalFactor laplacian_round(const ConformalFactor& f) {
  ConformalFactor out(f.L);
  for (int l = 0; l <= f.L; ++l) {
    double mul = -static_cast<double>(l) * (l + 1);
    for (int m = -l; m <= l; ++m)
      out.coeffs[sh_index(l, m)] = mul * f.coeffs[sh_index(l, m)];
  }
  return out;
}

double metric_volume(const ConformalFactor& rho, const QuadratureGrid& grid) {
  if (rho.is_zero()) return 4.0 * M_PI;
  return grid.integrate(
      [&](const Vec3& p) { return std::exp(2.0 * sh_evaluate(rho, p)); });
}

SpectrumReport laplace_spectrum(const ConformalFactor& rho, int k,
                                int L_solve) {
  const int N = sh_count(L_solve);
  if (k < 1 || k > N)
    throw std::invalid_argument("laplace_spectrum: k out of range");

  Eigen::VectorXd eigs;
  if (rho.is_zero()) {
    // Round sphere: mass is the identity, eigenvalues are l(l+1).
    eigs.resize(N);
    for (int l = 0; l <= L_solve; ++l)
      for (int m = -l; m <= l; ++m)
        eigs[sh_index(l, m)] = static_cast<double>(l) * (l + 1);
    std::sort(eigs.data(), eigs.data() + N);
  } else {
    const int L_aux = aux_band_limit(rho.L);
    const int degree = std::max(2 * L_aux, L_aux + 2 * L_solve);
    QuadratureGrid grid = QuadratureGrid::for_degree(degree);
    ConformalFactor e2 = project_to_band(
        [&](const Vec3& p) { return std::exp(2.0 * sh_evaluate(rho, p)); },
        L_aux, grid);

    // Mass matrix of multiplication by the projected e^{2ρ}; symmetric by
    // construction since every node contributes w * E(p) * y y^T.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    Eigen::VectorXd basis;
    for (int i = 0; i < grid.size(); ++i) {
      const Vec3& p = grid.points[static_cast<size_t>(i)];
      sh_basis(L_solve, p, basis);
      double we = grid.weights[static_cast<size_t>(i)] * sh_evaluate(e2, p);
      M.selfadjointView<Eigen::Lower>().rankUpdate(basis, we);
    }
    M = M.selfadjointView<Eigen::Lower>();

    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error(
          "laplace_spectrum: mass matrix not positive definite "
          "(insufficient quadrature for this conformal factor)");

    Eigen::VectorXd stiffness(N);
    for (int l = 0; l <= L_solve; ++l)
      for (int m = -l; m <= l; ++m)
        stiffness[sh_index(l, m)] = static_cast<double>(l) * (l + 1);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        stiffness.asDiagonal().toDenseMatrix(), M, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("laplace_spectrum: eigensolver failed");
    eigs = solver.eigenvalues();
  }

  SpectrumReport report;
  report.count = k;
  report.band_limit = L_solve;
  report.eigenvalues = eigs.head(k);
  if (std::abs(report.eigenvalues[0]) > 1e-8 ||
      report.eigenvalues.minCoeff() < -1e-10)
    throw std::runtime_error("laplace_spectrum: spectrum failed validation");
  return report;
}

}  // namespace vortex
