#include "vortexsphere/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace vortex {

std::vector<Vec3> vector_field(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx) {
  std::vector<Vec3> g = grad(z, gamma, ctx);
  std::vector<Vec3> v(static_cast<size_t>(z.size()));
  for (int i = 0; i < z.size(); ++i) {
    double scale = gamma[i] * ctx.conformal_density(z[i]);
    v[static_cast<size_t>(i)] = -z[i].cross(g[static_cast<size_t>(i)]) / scale;
  }
  return v;
}

Vec3 moment_map(const Configuration& z, const VorticityVector& gamma) {
  Vec3 m = Vec3::Zero();
  for (int i = 0; i < z.size(); ++i) m += gamma[i] * z[i];
  return m;
}

namespace {

Configuration normalized_midpoint(const Configuration& a,
                                  const Configuration& b) {
  std::vector<Vec3> pts(static_cast<size_t>(a.size()));
  for (int i = 0; i < a.size(); ++i)
    pts[static_cast<size_t>(i)] = renormalized(a[i] + b[i]);
  return Configuration(std::move(pts));
}

/// Implicit midpoint with the field evaluated at the per-vortex normalized
/// midpoint. The fixed point satisfies s_i·X_i(m) = -(dt/2)|X_i|² exactly,
/// which keeps |s_i| = 1 to solver tolerance without a separate projection.
bool midpoint_step(const Configuration& z, const VorticityVector& gamma,
                   const MetricContext& ctx, double dt, double tol,
                   int max_iters, Configuration& out) {
  Configuration y = z;
  {
    std::vector<Vec3> x0 = vector_field(z, gamma, ctx);
    for (int i = 0; i < z.size(); ++i)
      y[i] = renormalized(z[i] + dt * x0[static_cast<size_t>(i)]);
  }
  for (int iter = 0; iter < max_iters; ++iter) {
    Configuration mid = normalized_midpoint(z, y);
    std::vector<Vec3> x = vector_field(mid, gamma, ctx);
    double delta = 0.0;
    for (int i = 0; i < z.size(); ++i) {
      Vec3 yn = renormalized(z[i] + dt * x[static_cast<size_t>(i)]);
      delta = std::max(delta, (yn - y[i]).lpNorm<Eigen::Infinity>());
      y[i] = yn;
    }
    if (delta < tol) {
      out = y;
      return true;
    }
  }
  return false;
}

Configuration rk4_step(const Configuration& z, const VorticityVector& gamma,
                       const MetricContext& ctx, double dt) {
  auto shift = [&](const Configuration& base, const std::vector<Vec3>& k,
                   double c) {
    Configuration out = base;
    for (int i = 0; i < base.size(); ++i)
      out[i] = renormalized(base[i] + c * k[static_cast<size_t>(i)]);
    return out;
  };
  std::vector<Vec3> k1 = vector_field(z, gamma, ctx);
  std::vector<Vec3> k2 = vector_field(shift(z, k1, dt / 2), gamma, ctx);
  std::vector<Vec3> k3 = vector_field(shift(z, k2, dt / 2), gamma, ctx);
  std::vector<Vec3> k4 = vector_field(shift(z, k3, dt), gamma, ctx);
  Configuration out = z;
  for (int i = 0; i < z.size(); ++i) {
    size_t si = static_cast<size_t>(i);
    out[i] = renormalized(z[i] +
                          dt / 6.0 * (k1[si] + 2.0 * k2[si] + 2.0 * k3[si] +
                                      k4[si]));
  }
  return out;
}

}  // namespace

Configuration step_once(const Configuration& z, const VorticityVector& gamma,
                        const MetricContext& ctx,
                        const IntegratorSettings& settings, double dt) {
  if (settings.method == IntegratorMethod::RK4)
    return rk4_step(z, gamma, ctx, dt);
  Configuration out;
  if (!midpoint_step(z, gamma, ctx, dt, settings.newton_tol,
                     settings.max_newton_iters, out))
    throw std::runtime_error("step_once: midpoint iteration did not converge");
  return out;
}

Trajectory integrate(const Configuration& z0, const VorticityVector& gamma,
                     const MetricContext& ctx,
                     const IntegratorSettings& settings, double T) {
  if (settings.dt <= 0) throw std::invalid_argument("integrate: dt <= 0");
  if (!z0.collision_free(settings.collision_floor))
    throw std::invalid_argument("integrate: initial state below floor");

  Trajectory traj;
  long steps = std::lround(T / settings.dt);
  auto record = [&](double t, const Configuration& s) {
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.H_log.push_back(energy(s, gamma, ctx).H);
    traj.M_log.push_back(moment_map(s, gamma));
  };

  Configuration s = z0;
  record(0.0, s);
  double dt = T >= 0 ? settings.dt : -settings.dt;
  for (long k = 0; k < std::labs(steps); ++k) {
    Configuration next;
    if (settings.method == IntegratorMethod::RK4) {
      next = rk4_step(s, gamma, ctx, dt);
    } else if (!midpoint_step(s, gamma, ctx, dt, settings.newton_tol,
                              settings.max_newton_iters, next)) {
      traj.status = TrajectoryStatus::NewtonNonConvergence;
      traj.fail_step = k;
      return traj;
    }
    if (!next.collision_free(settings.collision_floor)) {
      traj.status = TrajectoryStatus::CollisionFloor;
      traj.fail_step = k;
      return traj;
    }
    s = next;
    if ((k + 1) % settings.record_every == 0 || k + 1 == std::labs(steps))
      record((k + 1) * dt, s);
  }
  return traj;
}

Configuration flow_to(const Configuration& z, const VorticityVector& gamma,
                      const MetricContext& ctx,
                      const IntegratorSettings& settings, double t) {
  Configuration s = z;
  double dt = t >= 0 ? settings.dt : -settings.dt;
  long full = static_cast<long>(std::floor(std::abs(t) / settings.dt));
  for (long k = 0; k < full; ++k) {
    s = step_once(s, gamma, ctx, settings, dt);
    if (!s.collision_free(settings.collision_floor))
      throw std::runtime_error("flow_to: collision floor breached");
  }
  double rem = t - full * dt;
  if (std::abs(rem) > 1e-15) s = step_once(s, gamma, ctx, settings, rem);
  return s;
}

}  // namespace vortex
