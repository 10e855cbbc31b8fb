#include "zeromode/closedform.hpp"

#include <cmath>

#include "zeromode/error.hpp"

namespace zeromode {

namespace {

// cosh(rL) and sinh(rL)/r as power series in s = r^2; both are even in r so
// no branch of the square root is involved.
void even_pair_series(cplx s, double L, cplx& c, cplx& sh) {
  const cplx z = s * (L * L);
  cplx term_c{1.0};
  cplx term_s{L};
  c = term_c;
  sh = term_s;
  for (int n = 1; n <= 6; ++n) {
    term_c *= z / static_cast<double>((2 * n - 1) * (2 * n));
    term_s *= z / static_cast<double>((2 * n) * (2 * n + 1));
    c += term_c;
    sh += term_s;
  }
}

}  // namespace

SpinorState TransferMatrix::apply(const SpinorState& s) const {
  return {m[0][0] * s.psi1 + m[0][1] * s.psi2, m[1][0] * s.psi1 + m[1][1] * s.psi2, to_x};
}

TransferMatrix compose(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  TransferMatrix out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.m[i][j] = lhs.m[i][0] * rhs.m[0][j] + lhs.m[i][1] * rhs.m[1][j];
    }
  }
  out.from_x = rhs.from_x;
  out.to_x = lhs.to_x;
  return out;
}

TransferMatrix piece_transfer(double v, double length, cplx gamma, double k) {
  TransferMatrix t;
  t.from_x = 0.0;
  t.to_x = length;
  if (length == 0.0) return t;

  const cplx a = k - gamma * v;  // psi1' = a psi2
  const cplx b = k + gamma * v;  // psi2' = b psi1
  const cplx s = a * b;          // generator squared: k^2 - gamma^2 v^2
  const cplx r = std::sqrt(s);

  cplx c;
  cplx sh;
  if (std::abs(r * length) < 1e-4) {
    even_pair_series(s, length, c, sh);
  } else {
    c = std::cosh(r * length);
    sh = std::sinh(r * length) / r;
  }
  t.m[0][0] = c;
  t.m[0][1] = sh * a;
  t.m[1][0] = sh * b;
  t.m[1][1] = c;
  return t;
}

TransferMatrix total_transfer(const PiecewiseConstantPotential& V, cplx gamma, double k) {
  TransferMatrix total;
  total.from_x = V.left();
  total.to_x = V.left();
  for (std::size_t j = 0; j < V.piece_count(); ++j) {
    TransferMatrix p = piece_transfer(V.values()[j], V.piece_length(j), gamma, k);
    p.from_x = V.breakpoints()[j];
    p.to_x = V.breakpoints()[j + 1];
    total = compose(p, total);
  }
  return total;
}

cplx determinant(const PiecewiseConstantPotential& V, cplx gamma, double k) {
  if (V.trivial()) throw Error(ErrorCode::TrivialPotential, "determinant of the zero potential");
  const TransferMatrix t = total_transfer(V, gamma, k);
  return t.m[0][0] + t.m[0][1] + t.m[1][0] + t.m[1][1];
}

double gap_angle_relation_check(double theta_a, double theta_b, double k, double length) {
  return std::sin(theta_b - theta_a) - std::tanh(k * length) * std::cos(theta_b + theta_a);
}

}  // namespace zeromode
