#include "zeromode/prufer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "zeromode/closedform.hpp"
#include "zeromode/error.hpp"
#include "zeromode/parallel.hpp"

namespace zeromode {

namespace {

namespace odeint = boost::numeric::odeint;

constexpr double kPi = std::numbers::pi;
constexpr double kOdeTol = 1e-11;
// Largest angle turn allowed on one exact sub-step before re-lifting.
constexpr double kMaxTurn = kPi / 8.0;

struct Segment {
  double from;
  double to;
  double v;
};

// Constant-value stretches of a piecewise potential between two points, in
// the order they are traversed.
std::vector<Segment> segments(const PiecewiseConstantPotential& V, double from, double to) {
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  std::vector<double> cuts{lo};
  for (double b : V.breakpoints()) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] == cuts[i]) continue;
    out.push_back({cuts[i], cuts[i + 1], V(0.5 * (cuts[i] + cuts[i + 1]))});
  }
  if (to < from) {
    std::reverse(out.begin(), out.end());
    for (auto& s : out) std::swap(s.from, s.to);
  }
  return out;
}

double lift(double theta, double psi1, double psi2) {
  const double raw = std::atan2(psi2, psi1);
  return theta + std::remainder(raw - theta, 2.0 * kPi);
}

std::size_t substeps(double length, double gamma, double v, double k) {
  const double rate = std::abs(gamma * v) + std::abs(k);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(length) * rate / kMaxTurn)));
}

// Exact spinor propagation of the angle across one constant segment.
double exact_segment(double theta, const Segment& seg, double gamma, double k) {
  const double L = seg.to - seg.from;
  const std::size_t n = substeps(L, gamma, seg.v, k);
  const TransferMatrix t = piece_transfer(seg.v, L / static_cast<double>(n), gamma, k);
  const double a = t.m[0][0].real(), b = t.m[0][1].real(), c = t.m[1][0].real(), d = t.m[1][1].real();
  double p1 = std::cos(theta);
  double p2 = std::sin(theta);
  for (std::size_t i = 0; i < n; ++i) {
    const double q1 = a * p1 + b * p2;
    const double q2 = c * p1 + d * p2;
    const double norm = std::hypot(q1, q2);
    p1 = q1 / norm;
    p2 = q2 / norm;
    theta = lift(theta, p1, p2);
  }
  return theta;
}

using OdeState = std::array<double, 2>;

// theta' = gamma V + k cos 2theta, omega' = V - 2k sin(2theta) omega.
template <class Eval>
void integrate_adaptive(OdeState& state, double from, double to, double gamma, double k, double max_step,
                        Eval&& potential_at, bool with_omega) {
  if (from == to) return;
  auto system = [&](const OdeState& s, OdeState& ds, double x) {
    const double v = potential_at(x);
    ds[0] = gamma * v + k * std::cos(2.0 * s[0]);
    ds[1] = with_omega ? v - 2.0 * k * std::sin(2.0 * s[0]) * s[1] : 0.0;
  };
  auto stepper = odeint::make_controlled(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<OdeState>());
  const double dir = to > from ? 1.0 : -1.0;
  double x = from;
  double dt = dir * std::min(max_step, 1e-2);
  while (dir * (to - x) > 0.0) {
    if (std::abs(dt) > max_step) dt = dir * max_step;
    if (dir * (x + dt - to) > 0.0) dt = to - x;
    const auto result = stepper.try_step(system, state, x, dt);
    if (result == odeint::fail && std::abs(dt) < 1e-13 * (1.0 + std::abs(x))) {
      std::ostringstream msg;
      msg << "step size underflow at x = " << x;
      throw Error(ErrorCode::StepUnderflow, msg.str());
    }
  }
}

double analytic_max_step(double gamma, double k) { return std::min(0.25, kMaxTurn / (std::abs(gamma) + k)); }

// Right-to-left sweep of the right-decaying solution across a piecewise
// potential by exact transfer. Returns theta at the left edge and, if asked,
// the integral of |psi(x)|^2 / |psi(left)|^2 V(x) over the support, which
// equals -omega_+(left).
std::pair<double, double> exact_backward_sweep(const PiecewiseConstantPotential& V, double gamma, double k,
                                               bool with_derivative) {
  using Gauss = boost::math::quadrature::gauss<double, 8>;
  // Full node set of the 8-point rule mapped to [0, 1].
  std::array<double, 8> nodes{};
  std::array<double, 8> weights{};
  {
    const auto& ab = Gauss::abscissa();
    const auto& w = Gauss::weights();
    std::size_t i = 0;
    for (std::size_t j = 0; j < ab.size(); ++j) {
      nodes[i] = 0.5 * (1.0 + ab[j]);
      weights[i++] = 0.5 * w[j];
      nodes[i] = 0.5 * (1.0 - ab[j]);
      weights[i++] = 0.5 * w[j];
    }
  }

  double theta = -kPi / 4.0;
  double p1 = (1.0 / std::numbers::sqrt2);
  double p2 = -(1.0 / std::numbers::sqrt2);
  double relative_integral = 0.0;

  for (std::size_t j = V.piece_count(); j-- > 0;) {
    const double v = V.values()[j];
    const double L = V.piece_length(j);
    const std::size_t n = substeps(L, gamma, v, k);
    const double h = -L / static_cast<double>(n);
    const TransferMatrix step = piece_transfer(v, h, gamma, k);
    std::array<TransferMatrix, 8> partial;
    if (with_derivative && v != 0.0) {
      for (std::size_t q = 0; q < 8; ++q) partial[q] = piece_transfer(v, nodes[q] * h, gamma, k);
    }
    for (std::size_t i = 0; i < n; ++i) {
      double piece_integral = 0.0;
      if (with_derivative && v != 0.0) {
        for (std::size_t q = 0; q < 8; ++q) {
          const auto& m = partial[q].m;
          const double r1 = m[0][0].real() * p1 + m[0][1].real() * p2;
          const double r2 = m[1][0].real() * p1 + m[1][1].real() * p2;
          piece_integral += weights[q] * (r1 * r1 + r2 * r2);
        }
        piece_integral *= std::abs(h) * v;
      }
      const double q1 = step.m[0][0].real() * p1 + step.m[0][1].real() * p2;
      const double q2 = step.m[1][0].real() * p1 + step.m[1][1].real() * p2;
      const double norm2 = q1 * q1 + q2 * q2;
      const double norm = std::sqrt(norm2);
      relative_integral = (relative_integral + piece_integral) / norm2;
      p1 = q1 / norm;
      p2 = q2 / norm;
      theta = lift(theta, p1, p2);
    }
  }
  return {theta, relative_integral};
}

}  // namespace

PropagationMethod default_method(const Potential& V) {
  return std::holds_alternative<PiecewiseConstantPotential>(V) ? PropagationMethod::ExactPiecewise
                                                               : PropagationMethod::AdaptiveODE;
}

PruferState propagate(const PruferState& state, const Potential& V, double to_x, PropagationMethod method) {
  PruferState out = state;
  out.x = to_x;
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) {
    for (const Segment& seg : segments(*pw, state.x, to_x)) {
      if (method == PropagationMethod::ExactPiecewise) {
        out.theta = exact_segment(out.theta, seg, state.gamma, state.k);
      } else {
        OdeState s{out.theta, 0.0};
        const double v = seg.v;
        integrate_adaptive(s, seg.from, seg.to, state.gamma, state.k, analytic_max_step(state.gamma * v, state.k),
                           [v](double) { return v; }, false);
        out.theta = s[0];
      }
    }
    return out;
  }
  if (method == PropagationMethod::ExactPiecewise) {
    throw Error(ErrorCode::InvalidArgument, "exact propagation needs a piecewise-constant potential");
  }
  const auto& an = std::get<AnalyticPotential>(V);
  OdeState s{out.theta, 0.0};
  integrate_adaptive(s, state.x, to_x, state.gamma, state.k, analytic_max_step(state.gamma, state.k),
                     [&an](double x) { return an(x); }, false);
  out.theta = s[0];
  return out;
}

PruferState propagate(const PruferState& state, const Potential& V, double to_x) {
  return propagate(state, V, to_x, default_method(V));
}

DeltaEvaluation evaluate_delta(const Potential& V, double gamma, double k, bool with_derivative,
                               PropagationMethod method, double truncation) {
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  DeltaEvaluation out{};
  out.method = method;
  out.derivative = std::numeric_limits<double>::quiet_NaN();

  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) {
    out.matching_point = pw->left();
    out.truncation = 0.0;
    if (method == PropagationMethod::ExactPiecewise) {
      const auto [theta, integral_rel] = exact_backward_sweep(*pw, gamma, k, with_derivative);
      out.delta = -kPi / 4.0 - theta;
      if (with_derivative) out.derivative = integral_rel;
      return out;
    }
    OdeState s{-kPi / 4.0, 0.0};
    for (const Segment& seg : segments(*pw, pw->right(), pw->left())) {
      const double v = seg.v;
      integrate_adaptive(s, seg.from, seg.to, gamma, k, analytic_max_step(gamma * v, k), [v](double) { return v; },
                         with_derivative);
    }
    out.delta = -kPi / 4.0 - s[0];
    if (with_derivative) out.derivative = -s[1];
    return out;
  }

  if (method == PropagationMethod::ExactPiecewise) {
    throw Error(ErrorCode::InvalidArgument, "exact propagation needs a piecewise-constant potential");
  }
  const auto& an = std::get<AnalyticPotential>(V);
  const double X = truncation > 0.0 ? truncation : truncation_radius(an, gamma);
  out.truncation = X;
  // Matching at -X would put theta_+ on the unstable fixed point of the
  // free equation and make delta a near-step function; match at the centre
  // of the profile instead, which also keeps delta translation invariant.
  out.matching_point = an.shift();
  const auto V_at = [&an](double x) { return an(x); };
  OdeState plus{-kPi / 4.0, 0.0};
  integrate_adaptive(plus, X, out.matching_point, gamma, k, analytic_max_step(gamma, k), V_at, with_derivative);
  OdeState minus{kPi / 4.0, 0.0};
  integrate_adaptive(minus, -X, out.matching_point, gamma, k, analytic_max_step(gamma, k), V_at, with_derivative);
  out.delta = -kPi / 2.0 - plus[0] + minus[0];
  if (with_derivative) out.derivative = minus[1] - plus[1];
  return out;
}

DeltaEvaluation evaluate_delta(const Potential& V, double gamma, double k, bool with_derivative) {
  return evaluate_delta(V, gamma, k, with_derivative, default_method(V));
}

double delta_v(const Potential& V, double gamma, double k) { return evaluate_delta(V, gamma, k, false).delta; }

double delta_derivative(const Potential& V, double gamma, double k) {
  return evaluate_delta(V, gamma, k, true).derivative;
}

Membership is_eigenvalue(const Potential& V, double gamma, double k, double tol) {
  const double d = delta_v(V, gamma, k);
  // Distance to pi/2 + pi Z.
  const double residual = std::abs(std::remainder(d - kPi / 2.0, kPi));
  return {residual < tol, residual};
}

double h_function(double a) { return a + (kPi / 2.0) * std::floor(2.0 * a / kPi); }

double truncation_bound(const AnalyticPotential& V, double gamma, double X) {
  const double tail = std::max(V.tail_right(X), V.tail_left(X));
  return h_function(std::abs(gamma) * tail);
}

double truncation_radius(const AnalyticPotential& V, double gamma, double bound) {
  if (gamma == 0.0) return std::abs(V.shift()) + 1.0;
  double lo = 0.0;
  double hi = std::abs(V.shift()) + V.decay_hint();
  while (truncation_bound(V, gamma, hi) >= bound) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorCode::InvalidArgument, "potential tails do not decay");
  }
  for (int it = 0; it < 60 && hi - lo > 1e-3; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (truncation_bound(V, gamma, mid) < bound) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DeltaCurve delta_curve(const Potential& V, double k, std::vector<double> gammas, unsigned threads) {
  DeltaCurve curve;
  curve.method = default_method(V);
  curve.delta_values =
      parallel_map<double>(gammas.size(), threads, [&](std::size_t i) { return delta_v(V, gammas[i], k); });
  curve.gammas = std::move(gammas);
  return curve;
}

std::string_view to_string(PropagationMethod m) {
  return m == PropagationMethod::ExactPiecewise ? "ExactPiecewise" : "AdaptiveODE";
}

std::string to_csv(const DeltaCurve& curve) {
  std::string out = "gamma,delta,method\n";
  for (std::size_t i = 0; i < curve.gammas.size(); ++i) {
    out += format_double(curve.gammas[i]);
    out += ',';
    out += format_double(curve.delta_values[i]);
    out += ',';
    out += to_string(curve.method);
    out += '\n';
  }
  return out;
}

}  // namespace zeromode
