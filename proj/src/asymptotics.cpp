#include "zeromode/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "zeromode/error.hpp"

namespace zeromode {

namespace {

constexpr double kPi = std::numbers::pi;

double clamped_asin(double x) {
  if (x > 1.0 && x < 1.0 + 1e-12) x = 1.0;
  if (x < -1.0 && x > -1.0 - 1e-12) x = -1.0;
  return std::asin(x);
}

bool sampled_single_sign(const AnalyticPotential& V) {
  const auto [a, b] = support(Potential{V});
  bool pos = false, neg = false;
  constexpr int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double v = V(a + (b - a) * i / n);
    pos = pos || v > 0.0;
    neg = neg || v < 0.0;
  }
  return !(pos && neg);
}

}  // namespace

double nu(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(alpha * beta > 1.0)) {
    std::ostringstream msg;
    msg << "nu needs 0 < alpha < 1 and alpha * beta > 1 (alpha = " << alpha << ", beta = " << beta << ")";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  const double root = std::sqrt(beta * beta - 1.0);
  const double xi = clamped_asin(std::sqrt(alpha * alpha * beta * beta - 1.0) / root);
  const double eta = clamped_asin(std::sqrt(1.0 - alpha * alpha) / (alpha * root));
  return (2.0 / kPi) * (beta * xi + eta);
}

ParityNormalizedBeta parity_normalize(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0) throw Error(ErrorCode::InvalidArgument, "p and q must be positive");
  if (std::gcd(p, q) != 1) throw Error(ErrorCode::NotCoprime, "p and q must be coprime");
  if (p % 2 == 1 && q % 2 == 1) return {p, q};
  return {2 * p, 2 * q};
}

std::optional<Rational> detect_rational(double x, std::int64_t max_denominator, double tol) {
  if (!std::isfinite(x) || x <= 0.0) return std::nullopt;
  // Convergents h/k of the continued fraction of x.
  std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a_real = std::floor(r);
    if (a_real > 1e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h2 = a * h0 + h1;
    const std::int64_t k2 = a * k0 + k1;
    if (k2 > max_denominator) break;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    const double err = std::abs(x - static_cast<double>(h0) / static_cast<double>(k0));
    // Every irrational has convergents with err ~ 1/q^2, so a genuine
    // rational must also beat that generic rate by a wide margin.
    const double kq = static_cast<double>(k0);
    if (err < tol && err < 1e-6 / (kq * kq)) return Rational{h0, k0};
    const double frac = r - a_real;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

ADensity a_density(double alpha, double beta, std::optional<Rational> rational_hint) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta >= 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "a_density needs 0 < alpha < 1 and beta >= 0");
  }
  const double product = alpha * beta;
  if (std::abs(product - 1.0) < 1e-9) {
    throw Error(ErrorCode::CriticalProduct, "alpha * beta = 1 is excluded");
  }
  if (product < 1.0) return {1.0, ABranch::SubCritical, false, std::nullopt};

  const double n = nu(alpha, beta);
  const std::optional<Rational> rational = rational_hint ? rational_hint : detect_rational(beta);
  if (!rational) return {n, ABranch::IrrationalSuper, false, std::nullopt};

  const ParityNormalizedBeta pb = parity_normalize(rational->p, rational->q);
  const double p = static_cast<double>(pb.p_beta);
  const double q = static_cast<double>(pb.q_beta);
  const double x = p + q * n;
  const bool degenerate = std::abs(x - 4.0 * std::round(x / 4.0)) < 1e-6;
  const double A = (4.0 / q) * std::floor(x / 4.0) - p / q + 2.0 / q;
  return {A, ABranch::RationalSuper, degenerate, pb};
}

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::SingleSign:
      return "SingleSign";
    case Theorem::NoGap:
      return "NoGap";
    case Theorem::OneGap:
      return "OneGap";
    case Theorem::ZeroIntegralFinite:
      return "ZeroIntegralFinite";
    case Theorem::AntisymmetricEmpty:
      return "AntisymmetricEmpty";
    case Theorem::LowerBoundOnly:
      return "LowerBoundOnly";
    case Theorem::UpperBoundOnly:
      return "UpperBoundOnly";
  }
  return "?";
}

std::string_view to_string(ABranch b) {
  switch (b) {
    case ABranch::SubCritical:
      return "SubCritical";
    case ABranch::IrrationalSuper:
      return "IrrationalSuper";
    case ABranch::RationalSuper:
      return "RationalSuper";
  }
  return "?";
}

DensityPrediction predict(const Potential& V, double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  const double norm = l1_norm(V);
  if (norm == 0.0) throw Error(ErrorCode::TrivialPotential, "no prediction for the zero potential");
  const double total = integral(V);
  const bool zero_integral = std::abs(total) <= 1e-14 * norm;

  DensityPrediction out{};
  out.lower_slope = zero_integral ? 0.0 : std::abs(total) / kPi;
  out.upper_slope = 2.0 * std::numbers::e * norm / kPi;

  const auto* pw = std::get_if<PiecewiseConstantPotential>(&V);
  if (pw == nullptr) {
    const auto& an = std::get<AnalyticPotential>(V);
    if (sampled_single_sign(an)) {
      out.theorem = Theorem::SingleSign;
      out.slope = norm / kPi;
    } else if (zero_integral) {
      out.theorem = Theorem::UpperBoundOnly;
      out.slope = out.upper_slope;
    } else {
      out.theorem = Theorem::LowerBoundOnly;
      out.slope = out.lower_slope;
    }
    return out;
  }

  if (is_single_signed(*pw)) {
    out.theorem = Theorem::SingleSign;
    out.slope = norm / kPi;
    return out;
  }
  if (is_antisymmetric(*pw)) {
    out.theorem = Theorem::AntisymmetricEmpty;
    out.slope = 0.0;
    return out;
  }
  const GapStructure gaps = classify_gaps(*pw);
  switch (gaps.kind) {
    case GapKind::NoGap:
      out.theorem = Theorem::NoGap;
      out.slope = out.lower_slope;
      return out;
    case GapKind::OneGap: {
      if (zero_integral) {
        out.theorem = Theorem::ZeroIntegralFinite;
        out.slope = 0.0;
        return out;
      }
      const OneGapParams g = one_gap_params(*pw, k);
      try {
        const ADensity a = a_density(g.alpha, g.beta);
        out.theorem = Theorem::OneGap;
        out.case_info = a.branch;
        out.degenerate = a.degenerate;
        out.slope = a.A * std::abs(g.v1 + g.v2) / kPi;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CriticalProduct) throw;
        out.theorem = Theorem::LowerBoundOnly;
        out.degenerate = true;
        out.slope = out.lower_slope;
      }
      return out;
    }
    case GapKind::MultiGap:
      break;
  }
  if (zero_integral) {
    out.theorem = Theorem::UpperBoundOnly;
    out.slope = out.upper_slope;
  } else {
    out.theorem = Theorem::LowerBoundOnly;
    out.slope = out.lower_slope;
  }
  return out;
}

ComparisonReport compare(const GammaSpectrum& spectrum, const DensityPrediction& prediction, double R) {
  if (R > spectrum.search_region.re_max) {
    throw Error(ErrorCode::RegionTooSmall, "spectrum does not cover [0, R]");
  }
  std::vector<double> gammas;
  for (const auto& r : spectrum.roots) {
    if (r.value.imag() == 0.0 && r.value.real() > 0.0 && r.value.real() <= R) gammas.push_back(r.value.real());
  }
  std::sort(gammas.begin(), gammas.end());
  const bool finite_expected =
      prediction.theorem == Theorem::AntisymmetricEmpty || prediction.theorem == Theorem::ZeroIntegralFinite;

  ComparisonReport out{0.0, prediction.slope, 0.0, gammas.size(), R};
  if (gammas.size() < 10) {
    if (!finite_expected) {
      std::ostringstream msg;
      msg << "only " << gammas.size() << " roots in (0, " << R << "], need 10";
      throw Error(ErrorCode::InsufficientRoots, msg.str());
    }
  } else {
    // Least-squares fit n = c + slope * gamma_n.
    const double m = static_cast<double>(gammas.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      const double x = gammas[i];
      const double y = static_cast<double>(i + 1);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    out.empirical_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  out.relative_gap = prediction.slope > 0.0
                         ? std::abs(out.empirical_slope - prediction.slope) / prediction.slope
                         : std::abs(out.empirical_slope);
  return out;
}

std::string to_json(const ComparisonReport& report, const DensityPrediction& prediction) {
  nlohmann::ordered_json j;
  j["empirical_slope"] = report.empirical_slope;
  j["predicted_slope"] = report.predicted_slope;
  j["relative_gap"] = report.relative_gap;
  j["roots_used"] = report.roots_used;
  j["R"] = report.R;
  j["theorem"] = std::string(to_string(prediction.theorem));
  j["lower_slope"] = prediction.lower_slope;
  j["upper_slope"] = prediction.upper_slope;
  if (prediction.case_info) j["case"] = std::string(to_string(*prediction.case_info));
  j["degenerate"] = prediction.degenerate;
  return j.dump();
}

}  // namespace zeromode
