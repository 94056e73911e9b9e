#include "vortexsphere/harmonics.hpp"

#include <cmath>

namespace vortex {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

// Fully normalized, sin^m θ-factored associated Legendre functions:
//   Qbar_l^m(z) = N_{l,m} P_l^m(z) / (1-z^2)^{m/2},
// so that Y_{l,m>0} = √2 Qbar_l^m(z) C_m(x,y) with C_m = Re((x+iy)^m) and
// analogously S_m = Im((x+iy)^m) for m < 0. Factoring out sin^m θ keeps the
// evaluation polynomial in (x, y, z) and finite at the poles.
//
// Recurrences (Condon–Shortley-free):
//   Qbar_0^0 = 1/√(4π)
//   Qbar_m^m = √((2m+1)/(2m)) Qbar_{m-1}^{m-1}
//   Qbar_{m+1}^m = √(2m+3) z Qbar_m^m
//   Qbar_l^m = a_l^m ( z Qbar_{l-1}^m - Qbar_{l-2}^m / a_{l-1}^m )
//     with a_l^m = √((4l^2-1)/(l^2-m^2)).
//
// The walker below iterates l at fixed m and carries d/dz alongside.

struct QbarWalker {
  double z;
  int m;
  int l;          // current degree
  double q, qm1;  // Qbar_l^m, Qbar_{l-1}^m
  double d, dm1;  // z-derivatives
  double prev_a;  // a_{l}^m used in the last step

  QbarWalker(double z_, int m_, double qmm) : z(z_), m(m_), l(m_) {
    q = qmm;
    d = 0.0;
    qm1 = 0.0;
    dm1 = 0.0;
    prev_a = 0.0;
  }

  void advance() {
    int ln = l + 1;
    double qn, dn;
    if (ln == m + 1) {
      double c = std::sqrt(2.0 * m + 3.0);
      qn = c * z * q;
      dn = c * q;
      prev_a = c;  // a_{m+1}^m = √((2m+3)(2m+1)/(2m+1)) = √(2m+3)
    } else {
      double a = std::sqrt((4.0 * ln * ln - 1.0) /
                           (static_cast<double>(ln) * ln - m * m));
      qn = a * (z * q - qm1 / prev_a);
      dn = a * (q + z * d - dm1 / prev_a);
      prev_a = a;
    }
    qm1 = q;
    dm1 = d;
    q = qn;
    d = dn;
    l = ln;
  }
};

inline double qbar_seed(int m, double prev_seed) {
  if (m == 0) return 1.0 / std::sqrt(kFourPi);
  return prev_seed * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
}

constexpr double kSqrt2 = 1.4142135623730950488;

}  // namespace

double sh_evaluate(const ConformalFactor& f, const Vec3& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  double acc = 0.0;
  double seed = 0.0;
  double cm = 1.0, sm = 0.0;  // C_m, S_m running values
  for (int m = 0; m <= f.L; ++m) {
    seed = qbar_seed(m, seed);
    if (m > 0) {
      double c_next = cm * x - sm * y;
      double s_next = sm * x + cm * y;
      cm = c_next;
      sm = s_next;
    }
    QbarWalker w(z, m, seed);
    for (int l = m; l <= f.L; ++l) {
      if (m == 0) {
        acc += f.coeffs[sh_index(l, 0)] * w.q;
      } else {
        double base = kSqrt2 * w.q;
        acc += base * (f.coeffs[sh_index(l, m)] * cm +
                       f.coeffs[sh_index(l, -m)] * sm);
      }
      if (l < f.L) w.advance();
    }
  }
  return acc;
}

std::pair<double, Vec3> sh_evaluate_with_gradient(const ConformalFactor& f,
                                                  const Vec3& p) {
  const double x = p.x(), y = p.y(), z = p.z();
  double acc = 0.0;
  Vec3 grad = Vec3::Zero();  // ambient gradient of the polynomial extension
  double seed = 0.0;
  double cm = 1.0, sm = 0.0;        // C_m, S_m
  double cm_prev = 0.0, sm_prev = 0.0;  // C_{m-1}, S_{m-1}
  for (int m = 0; m <= f.L; ++m) {
    seed = qbar_seed(m, seed);
    if (m > 0) {
      cm_prev = cm;
      sm_prev = sm;
      double c_next = cm * x - sm * y;
      double s_next = sm * x + cm * y;
      cm = c_next;
      sm = s_next;
    }
    QbarWalker w(z, m, seed);
    for (int l = m; l <= f.L; ++l) {
      if (m == 0) {
        double c = f.coeffs[sh_index(l, 0)];
        acc += c * w.q;
        grad.z() += c * w.d;
      } else {
        double cc = f.coeffs[sh_index(l, m)];
        double cs = f.coeffs[sh_index(l, -m)];
        acc += kSqrt2 * w.q * (cc * cm + cs * sm);
        // ∂C_m = m(C_{m-1}, -S_{m-1}), ∂S_m = m(S_{m-1}, C_{m-1}) in (x, y)
        grad.x() += kSqrt2 * m * w.q * (cc * cm_prev + cs * sm_prev);
        grad.y() += kSqrt2 * m * w.q * (-cc * sm_prev + cs * cm_prev);
        grad.z() += kSqrt2 * w.d * (cc * cm + cs * sm);
      }
      if (l < f.L) w.advance();
    }
  }
  return {acc, tangent_project(p, grad)};
}

Vec3 sh_surface_gradient(const ConformalFactor& f, const Vec3& p) {
  return sh_evaluate_with_gradient(f, p).second;
}

void sh_basis(int L, const Vec3& p, Eigen::VectorXd& out) {
  out.resize(sh_count(L));
  const double x = p.x(), y = p.y(), z = p.z();
  double seed = 0.0;
  double cm = 1.0, sm = 0.0;
  for (int m = 0; m <= L; ++m) {
    seed = qbar_seed(m, seed);
    if (m > 0) {
      double c_next = cm * x - sm * y;
      double s_next = sm * x + cm * y;
      cm = c_next;
      sm = s_next;
    }
    QbarWalker w(z, m, seed);
    for (int l = m; l <= L; ++l) {
      if (m == 0) {
        out[sh_index(l, 0)] = w.q;
      } else {
        out[sh_index(l, m)] = kSqrt2 * w.q * cm;
        out[sh_index(l, -m)] = kSqrt2 * w.q * sm;
      }
      if (l < L) w.advance();
    }
  }
}

}  // namespace vortex
