#pragma once

#include <string>
#include <vector>

#include "zeromode/potential.hpp"

namespace zeromode {

/// Continuously lifted Pruefer angle: exp(i theta) = (psi1 + i psi2) / |psi|,
/// evolving by theta' = gamma V + k cos(2 theta).
struct PruferState {
  double theta;
  double x;
  double gamma;
  double k;
};

enum class PropagationMethod {
  /// Exact spinor transfer per constant piece, angle re-lifted on sub-steps
  /// that turn it by less than pi/8. Piecewise-constant potentials only.
  ExactPiecewise,
  /// Adaptive Dormand-Prince on the angle equation.
  AdaptiveODE,
};

/// ExactPiecewise for piecewise-constant potentials, AdaptiveODE otherwise.
PropagationMethod default_method(const Potential& V);

/// Moves the state to to_x (either direction). Throws StepUnderflow.
PruferState propagate(const PruferState& state, const Potential& V, double to_x,
                      PropagationMethod method);
PruferState propagate(const PruferState& state, const Potential& V, double to_x);

struct DeltaEvaluation {
  double delta;
  /// d delta / d gamma (NaN when not requested).
  double derivative;
  /// Point where the left and right solutions are matched.
  double matching_point;
  /// Half-width of the integration window for analytic potentials (0 for
  /// compactly supported ones).
  double truncation;
  PropagationMethod method;
};

/// Angle defect -pi/2 - theta_+(c) + theta_-(c) between the solutions
/// decaying at +inf and -inf. Compactly supported potentials are matched at
/// the left edge of the support (where theta_- = pi/4); analytic ones at
/// the centre c of the profile, with both solutions started at +-X (X from
/// truncation_radius unless a positive `truncation` is supplied). gamma is
/// in Gamma(V) iff delta is in pi/2 + pi Z.
DeltaEvaluation evaluate_delta(const Potential& V, double gamma, double k, bool with_derivative,
                               PropagationMethod method, double truncation = 0.0);
DeltaEvaluation evaluate_delta(const Potential& V, double gamma, double k, bool with_derivative = false);

double delta_v(const Potential& V, double gamma, double k);
double delta_derivative(const Potential& V, double gamma, double k);

struct Membership {
  bool member;
  /// Distance of delta to the nearest (n + 1/2) pi.
  double residual;
};

Membership is_eigenvalue(const Potential& V, double gamma, double k, double tol);

/// h(a) = a + (pi/2) floor(2a/pi).
double h_function(double a);

/// h(|gamma| * tail) with tail the larger of the integrals of |V| beyond +X
/// and below -X: a bound on the angle error from cutting the domain at +-X.
double truncation_bound(const AnalyticPotential& V, double gamma, double X);

/// Smallest X (to bisection accuracy) with truncation_bound below `bound`.
double truncation_radius(const AnalyticPotential& V, double gamma, double bound = 1e-8);

struct DeltaCurve {
  std::vector<double> gammas;
  std::vector<double> delta_values;
  PropagationMethod method;
};

DeltaCurve delta_curve(const Potential& V, double k, std::vector<double> gammas, unsigned threads = 1);

std::string_view to_string(PropagationMethod m);

/// "gamma,delta,method" rows.
std::string to_csv(const DeltaCurve& curve);

}  // namespace zeromode
