#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "zeromode/potential.hpp"
#include "zeromode/spectra.hpp"

namespace zeromode {

/// nu_{alpha,beta}; requires 0 < alpha < 1 and alpha * beta > 1.
double nu(double alpha, double beta);

struct Rational {
  std::int64_t p;
  std::int64_t q;
};

struct ParityNormalizedBeta {
  std::int64_t p_beta;
  std::int64_t q_beta;
};

/// (p, q) if both odd, (2p, 2q) if of opposite parity. Throws NotCoprime.
ParityNormalizedBeta parity_normalize(std::int64_t p, std::int64_t q);

/// Continued-fraction search for p/q with q <= max_denominator and
/// |x - p/q| < tol.
std::optional<Rational> detect_rational(double x, std::int64_t max_denominator = 1'000'000,
                                        double tol = 1e-9);

enum class ABranch { SubCritical, IrrationalSuper, RationalSuper };

struct ADensity {
  double A;
  ABranch branch;
  /// Rational branch with p_beta + q_beta * nu within 1e-6 of 4Z.
  bool degenerate;
  std::optional<ParityNormalizedBeta> normalized;
};

/// Counting density factor A(alpha, beta). The hint, when given, decides
/// rationality; otherwise detect_rational does. Throws CriticalProduct when
/// |alpha beta - 1| < 1e-9.
ADensity a_density(double alpha, double beta, std::optional<Rational> rational_hint = std::nullopt);

enum class Theorem {
  SingleSign,
  NoGap,
  OneGap,
  ZeroIntegralFinite,
  AntisymmetricEmpty,
  LowerBoundOnly,
  UpperBoundOnly,
};

std::string_view to_string(Theorem t);
std::string_view to_string(ABranch b);

struct DensityPrediction {
  /// Expected #(Gamma(V) n [0, R]) ~ slope * R.
  double slope;
  /// |int V| / pi, the general asymptotic lower bound.
  double lower_slope;
  /// 2e ||V||_1 / pi, the general uniform upper bound on real points.
  double upper_slope;
  Theorem theorem;
  std::optional<ABranch> case_info;
  bool degenerate = false;
};

DensityPrediction predict(const Potential& V, double k);

struct ComparisonReport {
  double empirical_slope;
  double predicted_slope;
  double relative_gap;
  std::size_t roots_used;
  double R;
};

/// Least-squares slope of n against gamma_n over roots in (0, R]. Requires
/// at least ten roots unless the prediction is a finite spectrum.
ComparisonReport compare(const GammaSpectrum& spectrum, const DensityPrediction& prediction, double R);

std::string to_json(const ComparisonReport& report, const DensityPrediction& prediction);

}  // namespace zeromode
