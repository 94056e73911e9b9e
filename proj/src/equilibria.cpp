#include "vortexsphere/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vortexsphere/random.hpp"

namespace vortex {

namespace {

Eigen::VectorXd frame_gradient(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx) {
  return to_frame_coords(z, grad(z, gamma, ctx));
}

/// SVD solve with relative truncation; handles the rank-deficient Hessians
/// that occur on critical manifolds.
Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  return svd.solve(b);
}

}  // namespace

bool newton_polish(Configuration& z, const VorticityVector& gamma,
                   const MetricContext& ctx, double newton_tol, int max_iters,
                   int* iters_used) {
  Configuration s = z;
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::VectorXd g = frame_gradient(s, gamma, ctx);
    if (g.norm() < newton_tol) {
      z = s;
      if (iters_used) *iters_used = iter;
      return true;
    }
    if (s.min_pairwise_chord() < 1e-6) return false;  // collision funnel
    Eigen::MatrixXd H = hessian(s, gamma, ctx);
    Eigen::VectorXd step = pinv_solve(H, -g);
    if (!step.allFinite()) return false;
    double limit = 0.5;
    if (step.norm() > limit) step *= limit / step.norm();
    // Backtracking on |grad|.
    double g0 = g.norm();
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      Configuration trial = retract(s, t * step);
      if (trial.min_pairwise_chord() > kCollisionEps) {
        double gt = frame_gradient(trial, gamma, ctx).norm();
        if (gt < g0 * (1.0 - 1e-4 * t) || gt < newton_tol) {
          s = trial;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) return false;
  }
  return frame_gradient(z = s, gamma, ctx).norm() < newton_tol;
}

FixedPointReport analyze_point(const Configuration& z,
                               const VorticityVector& gamma,
                               const MetricContext& ctx) {
  FixedPointReport r;
  r.z = z;
  r.grad_norm = frame_gradient(z, gamma, ctx).norm();
  r.energy = energy(z, gamma, ctx).H;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hessian(z, gamma, ctx));
  r.hessian_eigenvalues = es.eigenvalues();
  double scale = r.hessian_eigenvalues.cwiseAbs().maxCoeff();
  double tol_kernel = 1e-6 * scale;
  if (scale == 0.0) {
    r.kernel_dim = static_cast<int>(r.hessian_eigenvalues.size());
    r.morse_index = 0;
    return r;
  }
  for (int i = 0; i < r.hessian_eigenvalues.size(); ++i) {
    double lam = r.hessian_eigenvalues[i];
    if (std::abs(lam) < tol_kernel)
      ++r.kernel_dim;
    else if (lam < 0)
      ++r.morse_index;
  }
  return r;
}

namespace {

/// Equality of configurations up to permutations that preserve the
/// vorticities, at per-vortex chord tolerance.
bool same_up_to_permutation(const Configuration& a, const Configuration& b,
                            const VorticityVector& gamma, double tol) {
  const int n = a.size();
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  // Greedy matching within equal-vorticity groups, then verify.
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = tol;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<size_t>(j)] || gamma[i] != gamma[j]) continue;
      double d = chord_distance(a[i], b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0) return false;
    used[static_cast<size_t>(best)] = true;
  }
  return true;
}

}  // namespace

FixedPointSearch find_fixed_points(const VorticityVector& gamma,
                                   const MetricContext& ctx, int starts,
                                   uint64_t seed, double newton_tol) {
  FixedPointSearch out;
  Rng rng(seed);
  const int n = gamma.size();
  for (int s = 0; s < starts; ++s) {
    Configuration z = random_configuration(n, rng, 0.2);
    if (!newton_polish(z, gamma, ctx, newton_tol, 100)) {
      ++out.failed_starts;
      continue;
    }
    bool merged = false;
    for (size_t k = 0; k < out.points.size(); ++k) {
      if (same_up_to_permutation(out.points[k].z, z, gamma, 1e-6)) {
        ++out.basin_hits[k];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.points.push_back(analyze_point(z, gamma, ctx));
      out.basin_hits.push_back(1);
    }
  }
  // Deterministic order: energy, then lexicographic coordinates.
  std::vector<size_t> order(out.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (out.points[a].energy != out.points[b].energy)
      return out.points[a].energy < out.points[b].energy;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < 3; ++c) {
        double va = out.points[a].z[i][c], vb = out.points[b].z[i][c];
        if (va != vb) return va < vb;
      }
    return false;
  });
  FixedPointSearch sorted;
  sorted.failed_starts = out.failed_starts;
  for (size_t idx : order) {
    sorted.points.push_back(std::move(out.points[idx]));
    sorted.basin_hits.push_back(out.basin_hits[idx]);
  }
  return sorted;
}

double cluster_sum(const VorticityVector& gamma,
                   const std::vector<int>& subset) {
  double s = 0.0, s2 = 0.0;
  for (int i : subset) {
    s += gamma[i];
    s2 += gamma[i] * gamma[i];
  }
  return s * s - s2;
}

VorticityDegeneracyReport cluster_vorticity_sums(
    const VorticityVector& gamma) {
  const int n = gamma.size();
  if (n > 20)
    throw std::invalid_argument("cluster_vorticity_sums: n > 20");
  VorticityDegeneracyReport rep;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    ClusterVorticity c;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) c.indices.push_back(i);
    c.value = cluster_sum(gamma, c.indices);
    c.degenerate = std::abs(c.value) < 1e-12;
    if (c.degenerate) rep.non_degenerate = false;
    rep.subsets.push_back(std::move(c));
  }
  return rep;
}

std::vector<ClusterEvent> cluster_monitor(const Trajectory& traj,
                                          const VorticityVector& gamma,
                                          double eps) {
  std::vector<ClusterEvent> events;
  const int n = gamma.size();
  std::vector<std::vector<int>> open;  // subsets active at the previous time
  for (size_t s = 0; s < traj.states.size(); ++s) {
    const Configuration& z = traj.states[s];
    // Connected components of the chord < eps graph.
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int ncomp = 0;
    for (int i = 0; i < n; ++i) {
      if (comp[static_cast<size_t>(i)] >= 0) continue;
      std::vector<int> stack{i};
      comp[static_cast<size_t>(i)] = ncomp;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b = 0; b < n; ++b)
          if (comp[static_cast<size_t>(b)] < 0 &&
              chord_distance(z[a], z[b]) < eps) {
            comp[static_cast<size_t>(b)] = ncomp;
            stack.push_back(b);
          }
      }
      ++ncomp;
    }
    std::vector<std::vector<int>> subsets;
    for (int c = 0; c < ncomp; ++c) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (comp[static_cast<size_t>(i)] == c) members.push_back(i);
      if (members.size() < 2) continue;
      bool clique = true;
      for (size_t a = 0; a < members.size() && clique; ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
          if (chord_distance(z[members[a]], z[members[b]]) >= eps) {
            clique = false;
            break;
          }
      if (clique) subsets.push_back(std::move(members));
    }
    for (const auto& sub : subsets) {
      bool continued = false;
      for (auto& ev : events)
        if (ev.indices == sub &&
            std::find(open.begin(), open.end(), sub) != open.end() &&
            ev.t_last == (s > 0 ? traj.times[s - 1] : traj.times[s])) {
          ev.t_last = traj.times[s];
          continued = true;
          break;
        }
      if (!continued) {
        ClusterEvent ev;
        ev.t_first = ev.t_last = traj.times[s];
        ev.indices = sub;
        ev.gamma_sum = cluster_sum(gamma, sub);
        events.push_back(std::move(ev));
      }
    }
    open = std::move(subsets);
  }
  return events;
}

}  // namespace vortex
