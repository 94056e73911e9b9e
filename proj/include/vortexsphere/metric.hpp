#pragma once

#include "vortexsphere/quadrature.hpp"
#include "vortexsphere/spectral.hpp"

namespace vortex {

/// Immutable bundle of spectral quantities attached to a conformal factor:
/// the quadrature grid, the metric volume V_g, the band-limited projection of
/// e^{2ρ}, and aux = Δ_{g0}^{-1} e^{2ρ} on the zero-mean complement. Build
/// once, share freely (all evaluation is const).
class MetricContext {
 public:
  explicit MetricContext(ConformalFactor rho_in) : rho_(std::move(rho_in)) {
    round_ = rho_.is_zero();
    L_aux_ = aux_band_limit(rho_.L);
    grid_ = QuadratureGrid::for_degree(2 * L_aux_);
    if (round_) {
      volume_ = 4.0 * M_PI;
      exp_proj_ = ConformalFactor(L_aux_);
      exp_proj_.at(0, 0) = std::sqrt(4.0 * M_PI);  // e^{2·0} = 1
      aux_ = ConformalFactor(L_aux_);              // identically zero
    } else {
      exp_proj_ = project_to_band(
          [&](const Vec3& p) { return std::exp(2.0 * sh_evaluate(rho_, p)); },
          L_aux_, grid_);
      volume_ = metric_volume(rho_, grid_);
      aux_ = inv_laplacian_round(exp_proj_);
    }
  }

  static MetricContext round() { return MetricContext(ConformalFactor(0)); }

  const ConformalFactor& rho() const { return rho_; }
  const QuadratureGrid& grid() const { return grid_; }
  const ConformalFactor& exp_projection() const { return exp_proj_; }
  const ConformalFactor& aux() const { return aux_; }
  double volume() const { return volume_; }
  int aux_band() const { return L_aux_; }
  bool is_round() const { return round_; }

  double rho_value(const Vec3& p) const {
    return round_ ? 0.0 : sh_evaluate(rho_, p);
  }
  Vec3 rho_gradient(const Vec3& p) const {
    return round_ ? Vec3::Zero() : sh_surface_gradient(rho_, p);
  }
  /// e^{2ρ(p)} (true exponential, not the band-limited projection).
  double conformal_density(const Vec3& p) const {
    return round_ ? 1.0 : std::exp(2.0 * sh_evaluate(rho_, p));
  }
  double aux_value(const Vec3& p) const {
    return round_ ? 0.0 : sh_evaluate(aux_, p);
  }
  Vec3 aux_gradient(const Vec3& p) const {
    return round_ ? Vec3::Zero() : sh_surface_gradient(aux_, p);
  }

 private:
  ConformalFactor rho_;
  QuadratureGrid grid_;
  ConformalFactor exp_proj_;
  ConformalFactor aux_;
  double volume_ = 4.0 * M_PI;
  int L_aux_ = 8;
  bool round_ = true;
};

}  // namespace vortex
