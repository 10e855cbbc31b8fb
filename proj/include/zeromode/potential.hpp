#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace zeromode {

/// W(x; [a0..am]; {v1..vm}): value v_j on (a_{j-1}, a_j), zero outside
/// [a0, am]. At a breakpoint the right-limit is returned.
class PiecewiseConstantPotential {
 public:
  /// Adjacent equal breakpoints are merged (the zero-length piece is
  /// dropped). Throws NonMonotoneBreakpoints / LengthMismatch.
  PiecewiseConstantPotential(std::vector<double> breakpoints, std::vector<double> values);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  double left() const { return breakpoints_.front(); }
  double right() const { return breakpoints_.back(); }
  double piece_length(std::size_t j) const { return breakpoints_[j + 1] - breakpoints_[j]; }

  double operator()(double x) const;

  bool trivial() const;

  friend bool operator==(const PiecewiseConstantPotential&, const PiecewiseConstantPotential&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// A smooth integrable potential given by a named base profile plus the
/// rigid transforms applied to it: V(x) = sign * base(+-(x - shift)).
class AnalyticPotential {
 public:
  AnalyticPotential(std::string name, std::vector<double> params, std::function<double(double)> base,
                    double decay_hint);

  double operator()(double x) const;

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  /// Radius (about the shift point) beyond which the tails are negligible.
  double decay_hint() const { return decay_hint_; }
  double sign() const { return sign_; }
  double shift() const { return shift_; }
  bool mirrored() const { return mirrored_; }

  /// Integrals of |V| over (X, +inf) and (-inf, -X).
  double tail_right(double X) const;
  double tail_left(double X) const;

  AnalyticPotential translated(double c) const;
  AnalyticPotential negated() const;
  AnalyticPotential mirrored_copy() const;

 private:
  std::string name_;
  std::vector<double> params_;
  std::function<double(double)> base_;
  double decay_hint_;
  double sign_ = 1.0;
  double shift_ = 0.0;
  bool mirrored_ = false;
};

using Potential = std::variant<PiecewiseConstantPotential, AnalyticPotential>;

PiecewiseConstantPotential build_w(std::vector<double> breakpoints, std::vector<double> values);

double evaluate(const Potential& V, double x);
double l1_norm(const Potential& V);
double integral(const Potential& V);

/// Interval outside which V vanishes (piecewise) or is negligible (analytic,
/// using the decay hint).
std::pair<double, double> support(const Potential& V);

enum class GapKind { NoGap, OneGap, MultiGap };

struct SupportComponent {
  double a;
  double b;
  double integral;
};

struct GapStructure {
  GapKind kind;
  std::size_t gap_count;
  std::vector<SupportComponent> components;
};

GapStructure classify_gaps(const PiecewiseConstantPotential& V);

struct OneGapParams {
  double alpha;
  double beta;
  double k;
  double v1;
  double v2;
  double gap_length;
};

OneGapParams one_gap_params(const PiecewiseConstantPotential& V, double k);

bool is_single_signed(const PiecewiseConstantPotential& V);

/// True when V(c + x) = -V(c - x) for the midpoint c of the support.
bool is_antisymmetric(const PiecewiseConstantPotential& V, double tol = 1e-12);

/// One-gap potential with |int V| = v, ||V||_1 = u and counting density
/// A / pi at wavenumber k. Requires 0 < v < A < u.
PiecewiseConstantPotential synthesize_one_gap(double v, double A, double u, double k);

/// V(x) = -1/cosh(x).
AnalyticPotential hrp_potential();

struct Translate {
  double c;
};
struct Negate {};
struct Mirror {};
using TransformOp = std::variant<Translate, Negate, Mirror>;

Potential transform(const Potential& V, const TransformOp& op);
PiecewiseConstantPotential transform(const PiecewiseConstantPotential& V, const TransformOp& op);

/// Structured text record (key = value lines). Piecewise records round-trip
/// bit-exactly.
std::string to_record(const Potential& V);
Potential from_record(std::string_view text);

/// Shell-friendly potential notation:
///   w:[a0,a1,...]:v1,v2,...   piecewise constant
///   hrp                        -1/cosh(x)
///   v1 | v2:g | v3:g:b | v4:g  the worked example families
Potential parse_potential_spec(std::string_view spec);

namespace catalog {
PiecewiseConstantPotential v1();
PiecewiseConstantPotential v2(double g);
PiecewiseConstantPotential v3(double g, double b);
PiecewiseConstantPotential v4(double g);
}  // namespace catalog

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace zeromode
