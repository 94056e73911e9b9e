#include "vortexsphere/energy_bands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexsphere/random.hpp"

namespace vortex {

std::vector<Vec3> fibonacci_lattice(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_lattice: n < 1");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<size_t>(n));
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

namespace {

struct PinnedProblem {
  const Vec3& eta;
  int k;
  const VorticityVector& gamma;
  const MetricContext& ctx;

  int free_count() const { return gamma.size() - 1; }

  Configuration assemble(const std::vector<Vec3>& free_pts) const {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<size_t>(gamma.size()));
    int f = 0;
    for (int i = 0; i < gamma.size(); ++i) {
      if (i == k)
        pts.push_back(eta);
      else
        pts.push_back(free_pts[static_cast<size_t>(f++)]);
    }
    return Configuration(std::move(pts));
  }

  std::vector<Vec3> free_points(const Configuration& z) const {
    std::vector<Vec3> out;
    for (int i = 0; i < gamma.size(); ++i)
      if (i != k) out.push_back(z[i]);
    return out;
  }
};

/// Projected gradient descent with backtracking on the free vortices,
/// followed by quadratic-rate polish steps while the reduced Hessian is
/// positive definite. Returns the local minimum energy, or +inf on failure.
double local_minimize(const PinnedProblem& prob, std::vector<Vec3> free_pts,
                      Configuration& best_cfg, bool& collision_flag) {
  const int nf = static_cast<int>(free_pts.size());
  Configuration z = prob.assemble(free_pts);
  double f = energy(z, prob.gamma, prob.ctx).H;

  auto free_gradient = [&](const Configuration& cfg) {
    std::vector<Vec3> g = grad(cfg, prob.gamma, prob.ctx);
    Eigen::VectorXd gf(2 * nf);
    int fidx = 0;
    for (int i = 0; i < prob.gamma.size(); ++i) {
      if (i == prob.k) continue;
      TangentBasis fr = tangent_basis(cfg[i]);
      gf[2 * fidx] = fr.e1.dot(g[static_cast<size_t>(i)]);
      gf[2 * fidx + 1] = fr.e2.dot(g[static_cast<size_t>(i)]);
      ++fidx;
    }
    return gf;
  };
  auto move_free = [&](const Configuration& cfg, const Eigen::VectorXd& dx) {
    std::vector<Vec3> pts = prob.free_points(cfg);
    int fidx = 0;
    for (int i = 0; i < prob.gamma.size(); ++i) {
      if (i == prob.k) continue;
      TangentBasis fr = tangent_basis(cfg[i]);
      pts[static_cast<size_t>(fidx)] = renormalized(
          cfg[i] + dx[2 * fidx] * fr.e1 + dx[2 * fidx + 1] * fr.e2);
      ++fidx;
    }
    return prob.assemble(pts);
  };

  double step = 0.5;
  for (int iter = 0; iter < 400; ++iter) {
    Eigen::VectorXd g = free_gradient(z);
    double gn = g.norm();
    if (gn < 1e-11) break;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      Configuration trial = move_free(z, -step / std::max(gn, 1.0) * g);
      if (trial.min_pairwise_chord() > kCollisionEps) {
        double ft = energy(trial, prob.gamma, prob.ctx).H;
        if (ft < f - 1e-16) {
          z = trial;
          f = ft;
          moved = true;
          step = std::min(step * 1.6, 0.5);
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;
  }

  // Newton polish on the reduced system when curvature permits.
  for (int iter = 0; iter < 40; ++iter) {
    Eigen::VectorXd g = free_gradient(z);
    if (g.norm() < 1e-12) break;
    Eigen::MatrixXd H = hessian(z, prob.gamma, prob.ctx);
    // Extract the free block.
    Eigen::MatrixXd Hf(2 * nf, 2 * nf);
    std::vector<int> map;
    for (int i = 0; i < prob.gamma.size(); ++i)
      if (i != prob.k) {
        map.push_back(2 * i);
        map.push_back(2 * i + 1);
      }
    for (int a = 0; a < 2 * nf; ++a)
      for (int b = 0; b < 2 * nf; ++b)
        Hf(a, b) = H(map[static_cast<size_t>(a)], map[static_cast<size_t>(b)]);
    Eigen::LLT<Eigen::MatrixXd> llt(Hf);
    if (llt.info() != Eigen::Success) break;
    Eigen::VectorXd dx = llt.solve(-g);
    if (dx.norm() > 0.3) dx *= 0.3 / dx.norm();
    Configuration trial = move_free(z, dx);
    if (trial.min_pairwise_chord() <= kCollisionEps) break;
    double ft = energy(trial, prob.gamma, prob.ctx).H;
    if (ft > f + 1e-13) break;
    z = trial;
    f = ft;
  }

  if (z.min_pairwise_chord() < 1e-6) collision_flag = true;
  best_cfg = z;
  return f;
}

}  // namespace

InnerMinResult inner_min(const Vec3& eta, int k, const VorticityVector& gamma,
                         const MetricContext& ctx, int starts, uint64_t seed) {
  const int n = gamma.size();
  if (k < 0 || k >= n) throw std::invalid_argument("inner_min: index");
  for (int i = 0; i < n; ++i)
    if (gamma[i] <= 0.0)
      throw std::invalid_argument("inner_min: vorticities must be positive");

  InnerMinResult res;
  Vec3 eta_u = renormalized(eta);
  if (n == 1) {
    res.argmin = Configuration({eta_u});
    res.value = energy(res.argmin, gamma, ctx).H;
    res.converged_starts = 1;
    return res;
  }

  PinnedProblem prob{eta_u, k, gamma, ctx};
  Rng rng(seed);
  res.value = std::numeric_limits<double>::infinity();
  std::vector<double> found;
  for (int s = 0; s < std::max(starts, 2); ++s) {
    std::vector<Vec3> free_pts;
    int guard = 0;
    while (static_cast<int>(free_pts.size()) < n - 1 && guard++ < 10000) {
      Vec3 p = random_sphere_point(rng);
      bool ok = chord_distance(p, eta_u) > 0.05;
      for (const Vec3& q : free_pts) ok = ok && chord_distance(p, q) > 0.05;
      if (ok) free_pts.push_back(p);
    }
    Configuration cfg;
    bool coll = false;
    double f = local_minimize(prob, free_pts, cfg, coll);
    res.collision_adjacent = res.collision_adjacent || coll;
    if (std::isfinite(f)) {
      ++res.converged_starts;
      found.push_back(f);
      if (f < res.value) {
        res.value = f;
        res.argmin = cfg;
      }
    }
  }
  if (found.empty())
    throw std::runtime_error("inner_min: no start converged");
  double half1 = std::numeric_limits<double>::infinity();
  double half2 = half1;
  for (size_t i = 0; i < found.size(); ++i)
    (i % 2 == 0 ? half1 : half2) = std::min(i % 2 == 0 ? half1 : half2,
                                            found[i]);
  res.dispersion = (found.size() > 1 && std::isfinite(half2))
                       ? std::abs(half1 - half2)
                       : 0.0;
  return res;
}

namespace {

/// Derivative-free polish of an outer extremizer: shrinking pattern search on
/// the sphere, optimizing eta -> sign * inner_min(eta).
std::pair<Vec3, double> polish_outer(const Vec3& start, double start_value,
                                     double sign, int k,
                                     const VorticityVector& gamma,
                                     const MetricContext& ctx, int starts,
                                     uint64_t seed) {
  Vec3 eta = start;
  double best = start_value;
  double radius = 0.15;
  for (int round = 0; round < 6; ++round) {
    TangentBasis fr = tangent_basis(eta);
    bool improved = false;
    for (int d = 0; d < 4; ++d) {
      Vec3 dir = (d == 0   ? fr.e1
                  : d == 1 ? -fr.e1
                  : d == 2 ? fr.e2
                           : -fr.e2);
      Vec3 cand = renormalized(eta + radius * dir);
      double val = inner_min(cand, k, gamma, ctx, starts, seed).value;
      if (sign * val < sign * best) {
        best = val;
        eta = cand;
        improved = true;
      }
    }
    if (!improved) radius *= 0.4;
  }
  return {eta, best};
}

}  // namespace

BandReport c1_c2(int k, const VorticityVector& gamma, const MetricContext& ctx,
                 int grid_size, int starts, uint64_t seed) {
  BandReport rep;
  rep.k = k;
  rep.grid_size = grid_size;
  rep.starts = starts;
  rep.nodes = fibonacci_lattice(grid_size);
  rep.node_values.resize(static_cast<size_t>(grid_size));

  int imin = 0, imax = 0;
  for (int i = 0; i < grid_size; ++i) {
    InnerMinResult r =
        inner_min(rep.nodes[static_cast<size_t>(i)], k, gamma, ctx, starts,
                  seed + static_cast<uint64_t>(i) * 1000003u);
    rep.node_values[static_cast<size_t>(i)] = r.value;
    rep.dispersion = std::max(rep.dispersion, r.dispersion);
    if (r.value < rep.node_values[static_cast<size_t>(imin)]) imin = i;
    if (r.value > rep.node_values[static_cast<size_t>(imax)]) imax = i;
  }
  auto lo = polish_outer(rep.nodes[static_cast<size_t>(imin)],
                         rep.node_values[static_cast<size_t>(imin)], +1.0, k,
                         gamma, ctx, starts, seed ^ 0x5ca1ab1eu);
  auto hi = polish_outer(rep.nodes[static_cast<size_t>(imax)],
                         rep.node_values[static_cast<size_t>(imax)], -1.0, k,
                         gamma, ctx, starts, seed ^ 0x0ddba11u);
  rep.argmin_point = lo.first;
  rep.c1 = lo.second;
  rep.argmax_point = hi.first;
  rep.c2 = hi.second;
  return rep;
}

SeparationResult separation_check(double c, int k,
                                  const VorticityVector& gamma,
                                  const MetricContext& ctx,
                                  const BandReport& report, uint64_t seed) {
  SeparationResult res;
  res.vacuous = c < report.c1;
  // Prefer the argmax slice, then fall back to grid nodes in order.
  std::vector<Vec3> candidates;
  candidates.push_back(report.argmax_point);
  candidates.insert(candidates.end(), report.nodes.begin(),
                    report.nodes.end());
  for (size_t i = 0; i < candidates.size(); ++i) {
    size_t node = i == 0 ? 0 : i - 1;
    double cached = i == 0 ? report.c2 : report.node_values[node];
    if (cached <= c) continue;
    double verified =
        inner_min(candidates[i], k, gamma, ctx, report.starts, seed).value;
    if (verified > c) {
      res.point = candidates[i];
      res.inner_value = verified;
      return res;
    }
  }
  return res;
}

}  // namespace vortex
