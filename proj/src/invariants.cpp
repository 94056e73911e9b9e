#include "vortexsphere/invariants.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vortex {

namespace {

constexpr long long kDenominatorBound = 1000000;

long long gcd_ll(long long a, long long b) {
  return std::gcd(std::llabs(a), std::llabs(b));
}

/// lcm with overflow guard; returns -1 on overflow past ~9e17.
long long lcm_checked(long long a, long long b) {
  long long g = gcd_ll(a, b);
  if (g == 0) return 0;
  long double test = static_cast<long double>(a) / g * b;
  if (test > 9e17L) return -1;
  return a / g * b;
}

/// Best rational approximation p/q to r with q <= bound via continued
/// fractions; stops early once |r - p/q| <= tol.
bool rational_reconstruct(double r, double tol, long long& p, long long& q) {
  long long p0 = 1, q0 = 0;  // convergents p_{k-1}/q_{k-1}
  long long p1 = static_cast<long long>(std::floor(r)), q1 = 1;
  double x = r - std::floor(r);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(r - static_cast<double>(p1) / q1) <= tol) {
      p = p1;
      q = q1;
      return true;
    }
    if (x < 1e-18) break;
    x = 1.0 / x;
    double af = std::floor(x);
    if (af > 9e17) break;
    long long a = static_cast<long long>(af);
    x -= af;
    if (q0 + a * q1 > kDenominatorBound || q0 + a * q1 < 0) break;
    long long p2 = p0 + a * p1;
    long long q2 = q0 + a * q1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (std::abs(r - static_cast<double>(p1) / q1) <= tol) {
    p = p1;
    q = q1;
    return true;
  }
  return false;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = gcd_ll(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

CommensurabilityResult commensurability(const std::vector<double>& values,
                                        double tol) {
  if (values.empty())
    throw std::invalid_argument("commensurability: empty input");
  for (double v : values)
    if (v <= 0.0)
      throw std::invalid_argument("commensurability: values must be > 0");
  if (tol < 0.0) throw std::invalid_argument("commensurability: tol < 0");

  CommensurabilityResult res;
  res.tol = tol;

  const double v0 = values[0];
  std::vector<long long> ps, qs;
  // tol = 0 admits only ratios that are exactly representable; give the
  // reconstruction a floor at the double resolution of the ratio.
  for (double v : values) {
    double r = v / v0;
    long long p = 0, q = 1;
    double rtol = std::max(tol * r / (1.0 + tol), 4.0 * r * 1e-16);
    if (!rational_reconstruct(r, rtol, p, q) || p <= 0) return res;
    ps.push_back(p);
    qs.push_back(q);
  }
  long long L = 1;
  for (long long q : qs) {
    L = lcm_checked(L, q);
    if (L < 0) return res;  // overflow guard: treat as incommensurable
  }
  std::vector<long long> ls(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    long double li = static_cast<long double>(ps[i]) * (L / qs[i]);
    if (li > 9e17L) return res;
    ls[i] = ps[i] * (L / qs[i]);
  }
  long long g = 0;
  for (long long li : ls) g = gcd_ll(g, li);
  for (long long& li : ls) li /= g;
  double beta = v0 * static_cast<double>(g) / static_cast<double>(L);

  // Validate against the actual inputs; reconstruction artifacts (e.g. a
  // deep continued-fraction hit on an irrational ratio) are rejected here.
  for (size_t i = 0; i < values.size(); ++i) {
    double err = std::abs(values[i] - beta * static_cast<double>(ls[i]));
    if (err > tol * std::abs(values[i]) + 4e-16 * std::abs(values[i]))
      return res;
  }
  res.commensurable = true;
  res.beta = beta;
  res.l = std::move(ls);
  return res;
}

KappaResult kappa(const std::vector<double>& values, double tol) {
  CommensurabilityResult c = commensurability(values, tol);
  KappaResult k;
  if (!c.commensurable) {
    k.zero = true;
    return k;
  }
  long long g = 0;
  for (long long li : c.l) g = gcd_ll(g, li);
  k.value = c.beta * static_cast<double>(g);
  return k;
}

Rational kappa_exact(const std::vector<Rational>& values) {
  if (values.empty()) throw std::invalid_argument("kappa_exact: empty input");
  long long L = 1;
  for (const Rational& v : values) {
    if (v.num <= 0) throw std::invalid_argument("kappa_exact: values <= 0");
    L = lcm_checked(L, v.den);
    if (L < 0) throw std::overflow_error("kappa_exact: lcm overflow");
  }
  long long g = 0;
  for (const Rational& v : values) g = gcd_ll(g, v.num * (L / v.den));
  return Rational(g, L);
}

double minimal_action(const std::vector<double>& values, double area,
                      double tol) {
  if (area <= 0.0) throw std::invalid_argument("minimal_action: area <= 0");
  KappaResult k = kappa(values, tol);
  return k.zero ? 0.0 : k.value * area;
}

bool is_thin(int k, const VorticityVector& gamma, double tol) {
  const int n = gamma.size();
  if (k < 0 || k >= n) throw std::invalid_argument("is_thin: index");
  for (int i = 0; i < n; ++i)
    if (gamma[i] <= 0.0)
      throw std::invalid_argument("is_thin: vorticities must be positive");
  if (n == 1) return false;  // no companion factors to bound the action
  std::vector<double> rest;
  for (int i = 0; i < n; ++i)
    if (i != k) rest.push_back(gamma[i]);
  KappaResult kr = kappa(rest, tol);
  if (kr.zero) return false;
  return gamma[k] <= kr.value * (1.0 + 1e-12) + 1e-15;
}

BetaValues beta_values(const VorticityVector& gamma, double volume) {
  if (volume <= 0.0) throw std::invalid_argument("beta_values: volume <= 0");
  BetaValues out;
  out.gamma_bar = gamma.mean();
  const int n = gamma.size();
  for (int i = 0; i < n; ++i)
    out.betas.push_back(-4.0 * n * M_PI * out.gamma_bar /
                        (gamma[i] * volume));
  return out;
}

P3Report check_P3(const VorticityVector& gamma, const MetricContext& ctx,
                  int k_eigs) {
  P3Report rep;
  rep.betas = beta_values(gamma, ctx.volume());

  int L_solve = std::max(
      {8, ctx.rho().L + 4,
       static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k_eigs)))) +
           1});
  while (sh_count(L_solve) < k_eigs) ++L_solve;
  SpectrumReport spec = laplace_spectrum(ctx.rho(), k_eigs, L_solve);
  rep.spectrum = spec.eigenvalues;
  rep.covered_max = spec.eigenvalues[spec.eigenvalues.size() - 1];

  bool nonzero_match = false;
  bool uncovered = false;
  for (size_t i = 0; i < rep.betas.betas.size(); ++i) {
    double b = rep.betas.betas[i];
    if (b > rep.covered_max + rep.match_tol) {
      uncovered = true;
      continue;
    }
    for (int j = 0; j < rep.spectrum.size(); ++j) {
      if (std::abs(b - rep.spectrum[j]) < rep.match_tol) {
        rep.matches.emplace_back(static_cast<int>(i), j);
        if (std::abs(b) > rep.match_tol) nonzero_match = true;
      }
    }
  }
  if (nonzero_match)
    rep.status = P3Status::Fail;
  else if (uncovered)
    rep.status = P3Status::Inconclusive;
  else
    rep.status = P3Status::Pass;
  return rep;
}

}  // namespace vortex
