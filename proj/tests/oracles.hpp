#pragma once

// Independent reference computations used only by the tests: printed
// closed forms for the worked examples, a plain bisection, and a fixed-step
// RK4 integrator for the spinor system.

#include <cmath>
#include <complex>
#include <array>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx tilde(cplx g) { return std::sqrt(g * g - 1.0); }

// V1 = W([-1,1];{1}), k = 1.
inline double v1_printed(double g) {
  const cplx t = tilde(g);
  return (2.0 * (t * std::cos(2.0 * t) + std::sin(2.0 * t))).real() / (g - 1.0);
}

// V2,g with the sin(2 t) correction in the second bracket.
inline cplx v2_printed(cplx g, double gap) {
  const cplx t = tilde(g);
  return (2.0 * std::cosh(gap) * (t * t + 1.0 - std::cos(2.0 * t) + t * std::sin(2.0 * t)) +
          2.0 * std::sinh(gap) * (t * t * std::cos(2.0 * t) + t * std::sin(2.0 * t))) /
         (t * t);
}

inline cplx v3_printed(cplx g, double gap, double b) {
  const cplx t = tilde(g);
  const cplx plus = (b + 1.0) * t, minus = (b - 1.0) * t;
  return 2.0 / (t * t) *
         (((t * t + 1.0) * std::cos(minus) - std::cos(plus) + t * std::sin(plus)) * std::cosh(gap) +
          (t * t * std::cos(plus) + t * std::sin(plus)) * std::sinh(gap));
}

// Sign-change scan plus plain bisection to |b - a| < 1e-13.
inline std::vector<double> bisection_roots(const std::function<double(double)>& f, double a, double b,
                                           double step) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  for (double x1 = a + step; x0 < b; x1 += step) {
    if (x1 > b) x1 = b;
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Fixed-step RK4 for psi1' = (k - g V) psi2, psi2' = (k + g V) psi1.
inline std::array<cplx, 2> rk4_spinor(const std::function<double(double)>& V, cplx g, double k,
                                      std::array<cplx, 2> psi, double from, double to, int steps) {
  const double h = (to - from) / steps;
  auto rhs = [&](double x, const std::array<cplx, 2>& p) {
    const double v = V(x);
    return std::array<cplx, 2>{(k - g * v) * p[1], (k + g * v) * p[0]};
  };
  double x = from;
  for (int i = 0; i < steps; ++i) {
    const auto k1 = rhs(x, psi);
    const auto k2 = rhs(x + h / 2, {psi[0] + h / 2 * k1[0], psi[1] + h / 2 * k1[1]});
    const auto k3 = rhs(x + h / 2, {psi[0] + h / 2 * k2[0], psi[1] + h / 2 * k2[1]});
    const auto k4 = rhs(x + h, {psi[0] + h * k3[0], psi[1] + h * k3[1]});
    for (int c = 0; c < 2; ++c) psi[c] += h / 6 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    x += h;
  }
  return psi;
}

// Fixed-step RK4 for the scalar angle equation theta' = f(x, theta).
inline double rk4_scalar(const std::function<double(double, double)>& f, double y, double from, double to,
                         int steps) {
  const double h = (to - from) / steps;
  double x = from;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(x, y);
    const double k2 = f(x + h / 2, y + h / 2 * k1);
    const double k3 = f(x + h / 2, y + h / 2 * k2);
    const double k4 = f(x + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    x += h;
  }
  return y;
}

}  // namespace oracle
