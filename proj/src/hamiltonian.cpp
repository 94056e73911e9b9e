#include "vortexsphere/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

namespace {

constexpr double kInv4Pi = 1.0 / (4.0 * M_PI);
constexpr double kInv2Pi = 1.0 / (2.0 * M_PI);

void check_collision_free(const Configuration& z,
                          const VorticityVector& gamma) {
  if (z.size() != gamma.size())
    throw std::invalid_argument("configuration/vorticity size mismatch");
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j)
      if (chord_distance(z[i], z[j]) < kCollisionEps)
        throw std::invalid_argument("configuration has a colliding pair");
}

/// Conformal part of the energy at a single vortex position.
double self_term(const Vec3& p, double gamma_i, double gamma_sum,
                 const MetricContext& ctx) {
  return kInv2Pi * gamma_i * gamma_i * ctx.rho_value(p) -
         (gamma_sum / ctx.volume()) * gamma_i * ctx.aux_value(p);
}

Vec3 self_gradient(const Vec3& p, double gamma_i, double gamma_sum,
                   const MetricContext& ctx) {
  return kInv2Pi * gamma_i * gamma_i * ctx.rho_gradient(p) -
         (gamma_sum / ctx.volume()) * gamma_i * ctx.aux_gradient(p);
}

}  // namespace

double energy_round(const Configuration& z, const VorticityVector& gamma) {
  check_collision_free(z, gamma);
  double acc = 0.0;
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j) {
      double l2 = 2.0 - 2.0 * z[i].dot(z[j]);
      acc -= gamma[i] * gamma[j] * std::log(l2);
    }
  return kInv4Pi * acc;
}

EnergyReport energy(const Configuration& z, const VorticityVector& gamma,
                    const MetricContext& ctx) {
  EnergyReport r;
  r.interaction = energy_round(z, gamma);
  if (!ctx.is_round()) {
    double gsum = gamma.sum();
    for (int i = 0; i < z.size(); ++i)
      r.self += self_term(z[i], gamma[i], gsum, ctx);
  }
  r.H = r.interaction + r.self;
  return r;
}

std::vector<Vec3> grad_round(const Configuration& z,
                             const VorticityVector& gamma) {
  check_collision_free(z, gamma);
  std::vector<Vec3> g(static_cast<size_t>(z.size()), Vec3::Zero());
  for (int i = 0; i < z.size(); ++i) {
    Vec3 acc = Vec3::Zero();
    for (int j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      double l2 = 2.0 - 2.0 * z[i].dot(z[j]);
      acc += gamma[i] * gamma[j] / l2 * z[j];
    }
    g[static_cast<size_t>(i)] = kInv2Pi * tangent_project(z[i], acc);
  }
  return g;
}

std::vector<Vec3> grad(const Configuration& z, const VorticityVector& gamma,
                       const MetricContext& ctx) {
  std::vector<Vec3> g = grad_round(z, gamma);
  if (!ctx.is_round()) {
    double gsum = gamma.sum();
    for (int i = 0; i < z.size(); ++i)
      g[static_cast<size_t>(i)] += self_gradient(z[i], gamma[i], gsum, ctx);
  }
  return g;
}

Eigen::VectorXd to_frame_coords(const Configuration& z,
                                const std::vector<Vec3>& tangents) {
  Eigen::VectorXd x(2 * z.size());
  for (int i = 0; i < z.size(); ++i) {
    TangentBasis fr = tangent_basis(z[i]);
    x[2 * i] = fr.e1.dot(tangents[static_cast<size_t>(i)]);
    x[2 * i + 1] = fr.e2.dot(tangents[static_cast<size_t>(i)]);
  }
  return x;
}

Configuration retract(const Configuration& z, const Eigen::VectorXd& x) {
  if (x.size() != 2 * z.size())
    throw std::invalid_argument("retract: coordinate size mismatch");
  std::vector<Vec3> pts(static_cast<size_t>(z.size()));
  for (int i = 0; i < z.size(); ++i) {
    TangentBasis fr = tangent_basis(z[i]);
    pts[static_cast<size_t>(i)] =
        renormalized(z[i] + x[2 * i] * fr.e1 + x[2 * i + 1] * fr.e2);
  }
  return Configuration(std::move(pts));
}

namespace {

/// Frame gradient of the conformal part of the energy for the configuration
/// retract(z, x), expressed as the x-derivative of the retracted energy
/// (includes the 1/|z_i + E_i x_i| stretch of the retraction).
Eigen::VectorXd conformal_frame_gradient(const Configuration& z,
                                         const std::vector<TangentBasis>& fr,
                                         const Eigen::VectorXd& x,
                                         const VorticityVector& gamma,
                                         const MetricContext& ctx) {
  const int n = z.size();
  const double gsum = gamma.sum();
  Eigen::VectorXd g(2 * n);
  for (int i = 0; i < n; ++i) {
    Vec3 raw = z[i] + x[2 * i] * fr[static_cast<size_t>(i)].e1 +
               x[2 * i + 1] * fr[static_cast<size_t>(i)].e2;
    double nr = raw.norm();
    Vec3 s = raw / nr;
    Vec3 gs = self_gradient(s, gamma[i], gsum, ctx);
    // d s / d x_a = (e_a - s (s·e_a)) / |raw|
    g[2 * i] = gs.dot(fr[static_cast<size_t>(i)].e1 -
                      s * s.dot(fr[static_cast<size_t>(i)].e1)) /
               nr;
    g[2 * i + 1] = gs.dot(fr[static_cast<size_t>(i)].e2 -
                          s * s.dot(fr[static_cast<size_t>(i)].e2)) /
                   nr;
  }
  return g;
}

}  // namespace

Eigen::MatrixXd hessian(const Configuration& z, const VorticityVector& gamma,
                        const MetricContext& ctx) {
  check_collision_free(z, gamma);
  const int n = z.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);

  std::vector<TangentBasis> fr;
  fr.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) fr.push_back(tangent_basis(z[i]));

  // Chord-log part, analytic. Ambient extension Hr = -(1/4π) Σ ΓΓ log(2-2s·s'):
  //   ∂Hr/∂s_i = (1/2π) Σ_j ΓiΓj s_j / l_ij²
  //   ∂²Hr/∂s_i∂s_j = (1/2π) ΓiΓj [ I/l² + (2/l⁴) s_j s_iᵀ ]      (i ≠ j)
  //   ∂²Hr/∂s_i²   = (1/π) Σ_j ΓiΓj s_j s_jᵀ / l_ij⁴
  // plus the retraction curvature term -δ_ab (s_i · ∂Hr/∂s_i) on the diagonal.
  for (int i = 0; i < n; ++i) {
    Mat3 diag = Mat3::Zero();
    double radial = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double l2 = 2.0 - 2.0 * z[i].dot(z[j]);
      double gg = gamma[i] * gamma[j];
      diag += (gg / M_PI) / (l2 * l2) * (z[j] * z[j].transpose());
      radial += kInv2Pi * gg * z[i].dot(z[j]) / l2;

      Mat3 cross = kInv2Pi * gg *
                   (Mat3::Identity() / l2 +
                    2.0 / (l2 * l2) * (z[j] * z[i].transpose()));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const Vec3& ea = a == 0 ? fr[static_cast<size_t>(i)].e1
                                  : fr[static_cast<size_t>(i)].e2;
          const Vec3& eb = b == 0 ? fr[static_cast<size_t>(j)].e1
                                  : fr[static_cast<size_t>(j)].e2;
          H(2 * i + a, 2 * j + b) += ea.dot(cross * eb);
        }
    }
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Vec3& ea = a == 0 ? fr[static_cast<size_t>(i)].e1
                                : fr[static_cast<size_t>(i)].e2;
        const Vec3& eb = b == 0 ? fr[static_cast<size_t>(i)].e1
                                : fr[static_cast<size_t>(i)].e2;
        H(2 * i + a, 2 * i + b) += ea.dot(diag * eb);
        if (a == b) H(2 * i + a, 2 * i + b) -= radial;
      }
  }

  // Conformal part: central differences of the conformal frame gradient.
  if (!ctx.is_round()) {
    const double h = 1e-5;
    Eigen::MatrixXd C(2 * n, 2 * n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
      x[k] = h;
      Eigen::VectorXd gp = conformal_frame_gradient(z, fr, x, gamma, ctx);
      x[k] = -h;
      Eigen::VectorXd gm = conformal_frame_gradient(z, fr, x, gamma, ctx);
      x[k] = 0.0;
      C.col(k) = (gp - gm) / (2.0 * h);
    }
    H += 0.5 * (C + C.transpose());
  }

  return 0.5 * (H + H.transpose());
}

}  // namespace vortex
