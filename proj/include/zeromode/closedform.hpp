#pragma once

#include <array>
#include <complex>

#include "zeromode/potential.hpp"

namespace zeromode {

using cplx = std::complex<double>;

struct SpinorState {
  cplx psi1;
  cplx psi2;
  double x;
};

/// Propagator of (psi1, psi2) for psi1' = (k - gamma V) psi2,
/// psi2' = (k + gamma V) psi1.
struct TransferMatrix {
  std::array<std::array<cplx, 2>, 2> m{{{cplx{1.0}, cplx{0.0}}, {cplx{0.0}, cplx{1.0}}}};
  double from_x = 0.0;
  double to_x = 0.0;

  cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  SpinorState apply(const SpinorState& s) const;
};

/// this * rhs: first apply rhs (from rhs.from_x to rhs.to_x), then this.
TransferMatrix compose(const TransferMatrix& lhs, const TransferMatrix& rhs);

/// Exact propagator across a constant piece of signed length (negative
/// lengths propagate leftwards). Entire in gamma: uses cosh(rL) and
/// sinh(rL)/r with r^2 = k^2 - gamma^2 v^2, switching to a Taylor series
/// near r L = 0.
TransferMatrix piece_transfer(double v, double length, cplx gamma, double k);

/// Product of piece transfers from V.left() to V.right().
TransferMatrix total_transfer(const PiecewiseConstantPotential& V, cplx gamma, double k);

/// Matching function whose zeros are Gamma(V): the solution leaving the left
/// edge along (1, 1) must arrive at the right edge along (1, -1), i.e.
/// D(gamma) = <(1, 1), T(gamma) (1, 1)>. Defined up to a nonzero factor.
cplx determinant(const PiecewiseConstantPotential& V, cplx gamma, double k);

/// Residual of sin(tb - ta) = tanh(k L) cos(tb + ta), which holds for any
/// solution of theta' = k cos(2 theta) across a gap of length L.
double gap_angle_relation_check(double theta_a, double theta_b, double k, double length);

}  // namespace zeromode
