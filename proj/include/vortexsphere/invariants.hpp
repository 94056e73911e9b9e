#pragma once

#include <cstdint>
#include <vector>

#include "vortexsphere/geometry.hpp"
#include "vortexsphere/metric.hpp"
#include "vortexsphere/spectral.hpp"

namespace vortex {

/// Exact rational, always kept in lowest terms with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  double value() const { return static_cast<double>(num) / den; }
};

struct CommensurabilityResult {
  bool commensurable = false;
  double beta = 0.0;              // common scale, valid when commensurable
  std::vector<long long> l;       // integers in lowest terms, Γi ≈ β li
  double tol = 0.0;
};

/// Decides whether all pairwise ratios are rational within tol, using
/// continued-fraction rational reconstruction with denominator bound 1e6.
/// Candidate reconstructions are validated against |vi - β li| <= tol·|vi|;
/// validation failure (or an integer overflow guard) reports incommensurable.
CommensurabilityResult commensurability(const std::vector<double>& values,
                                        double tol);

struct KappaResult {
  bool zero = false;  // incommensurable collapse
  double value = 0.0;

  double value_or_zero() const { return zero ? 0.0 : value; }
};

/// κ(values) = β · hcf(l) for commensurable inputs, the symbol "zero"
/// otherwise.
KappaResult kappa(const std::vector<double>& values, double tol);

/// Exact-rational path: κ of p_i/q_i as a rational (never collapses).
Rational kappa_exact(const std::vector<Rational>& values);

/// Minimal positive symplectic action of the weighted product of spheres:
/// κ(values) · area, or 0 in the incommensurable case.
double minimal_action(const std::vector<double>& values, double area,
                      double tol);

/// Γ_k ≤ κ(Γ with index k removed); false when the remainder is
/// incommensurable. Requires all Γi > 0.
bool is_thin(int k, const VorticityVector& gamma, double tol = 1e-9);

struct BetaValues {
  std::vector<double> betas;  // β_i = -4 n π Γ̄ / (Γ_i V_g)
  double gamma_bar = 0.0;
};

BetaValues beta_values(const VorticityVector& gamma, double volume);

enum class P3Status { Pass, Fail, Inconclusive };

struct P3Report {
  P3Status status = P3Status::Pass;
  BetaValues betas;
  Eigen::VectorXd spectrum;
  std::vector<std::pair<int, int>> matches;  // (beta index, eigen index)
  double covered_max = 0.0;  // largest computed eigenvalue
  double match_tol = 1e-6;
};

/// Condition on {β_i} ∩ σ(-Δ_g): Pass when empty or exactly {0}; Fail on a
/// nonzero match; Inconclusive when some β_i exceeds the computed spectral
/// range.
P3Report check_P3(const VorticityVector& gamma, const MetricContext& ctx,
                  int k_eigs);

}  // namespace vortex
