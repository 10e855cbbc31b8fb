#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zeromode {

/// phi with its first derivative; the second derivative is optional.
struct Perturbation {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::function<double(double)> second = nullptr;
};

/// f(x) = cos x + alpha cos(beta x) + phi(x), 0 <= alpha < 1, beta >= 0.
struct TrigParams {
  double alpha;
  double beta;
  std::optional<Perturbation> phi;

  double f(double x) const;
  double df(double x) const;
};

/// Throws OutOfDomain unless 0 <= alpha < 1 and beta >= 0.
void validate(const TrigParams& p);

struct ZeroCount {
  std::vector<double> roots;
  /// Parallel to roots: E_f below the tangency threshold at the root.
  std::vector<bool> tangential;

  std::size_t count() const { return roots.size(); }
  std::size_t tangential_count() const;
};

/// Zeros of f on [a, b): sign-change scan with bisection, plus local
/// minimisation of |f| in cells where f turns back towards zero. A cell
/// holds at most two zeros; a touch of the axis counts once and is flagged.
/// Throws UnresolvedCell when a near-touch cannot be classified.
ZeroCount find_zeros(const std::function<double(double)>& f, const std::function<double(double)>& df, double a,
                     double b, double grid_step, unsigned threads = 1);

/// Zeros of f on [0, R]. grid_step must not exceed min(pi, pi/beta)/8.
ZeroCount brute_count(const TrigParams& params, double R, double grid_step, unsigned threads = 1);
ZeroCount brute_count(const TrigParams& params, double a, double b, double grid_step, unsigned threads = 1);

/// Largest admissible scan step, min(pi, pi/beta)/8.
double max_grid_step(double beta);

struct AngleConstants {
  double xi;
  double eta;
  double xi_prime;
  double eta_prime;
  double mu;
  /// Open interval J = -beta pi/2 + 3pi/2 + (-mu, mu).
  double j_lo;
  double j_hi;

  double nu() const;
};

/// Requires 0 < alpha < 1 and alpha beta > 1 (OutOfDomain).
AngleConstants angle_constants(double alpha, double beta);

/// m(t) = 1 + 2 sum_n 1_J(t - 2 pi n), with weight 1/2 at the ends of J:
/// the number of zeros of cos x + alpha cos(beta x + t) in [0, pi).
double multiplicity_m(double t, const AngleConstants& c);

/// Exact limit of (number of zeros in [0, R]) / R for beta = p/q in lowest
/// terms. Throws NotCoprime, OutOfDomain (alpha p/q <= 1) or
/// DegenerateEndpoint (a multiple of 2pi/q sits on an end of J).
double rational_density(long p, long q, double alpha);

/// f(x)^2 + f'(x)^2 < 1e-18.
bool tangency_test(const TrigParams& params, double x);

/// "R,count,density" rows for the given radii.
std::string count_trace_csv(const ZeroCount& zeros, std::span<const double> radii);

}  // namespace zeromode
