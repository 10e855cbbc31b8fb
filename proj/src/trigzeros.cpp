#include "zeromode/trigzeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "zeromode/error.hpp"
#include "zeromode/parallel.hpp"
#include "zeromode/potential.hpp"

namespace zeromode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTangencyEnergy = 1e-18;
// |f| at a local extremum below which the cell is a touch, not a crossing.
constexpr double kTouchLevel = 1e-9;
// Roots whose energy is this small get a local search for a tangency point.
constexpr double kNearTangencyEnergy = 1e-12;
constexpr double kTangencyWindow = 1e-3;
constexpr std::size_t kCellsPerChunk = 4096;

double bisect(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, a, b, fa, fb, [](double x, double y) { return std::abs(x - y) <= 1e-15 * std::max(1.0, std::abs(x)); },
      iters);
  return 0.5 * (lo + hi);
}

struct CellRoots {
  std::vector<double> roots;
  std::vector<bool> tangential;
};

void scan_cell(const std::function<double(double)>& f, const std::function<double(double)>& df, double a, double b,
               double fa, double fb, CellRoots& out) {
  auto energy = [&](double x) {
    const double v = f(x), d = df(x);
    return v * v + d * d;
  };
  // Roundoff in f blurs a multiple zero over a window of width ~ eps^(1/3),
  // so a root found by bisection may miss the tangency threshold. Minimise
  // the energy nearby instead; the minimiser is the tangency point.
  auto tangent_point = [&](double x, double lo, double hi) -> std::optional<double> {
    if (energy(x) < kTangencyEnergy) return x;
    const auto [xm, em] = boost::math::tools::brent_find_minima(energy, lo, hi, 52);
    if (em < kTangencyEnergy) return xm;
    return std::nullopt;
  };
  auto push = [&](double x) {
    if (energy(x) < kNearTangencyEnergy) {
      const double w = kTangencyWindow * std::max(1.0, std::abs(x));
      if (const auto t = tangent_point(x, std::max(a, x - w), std::min(b, x + w))) {
        out.roots.push_back(*t);
        out.tangential.push_back(true);
        return;
      }
    }
    out.roots.push_back(x);
    out.tangential.push_back(false);
  };

  if (fa == 0.0) {
    push(a);
    return;
  }
  if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
    push(bisect(f, a, b, fa, fb));
    return;
  }
  if (fb == 0.0) return;  // belongs to the next cell

  // Same sign at both ends: look for an interior extremum heading to zero.
  const double s = fa > 0.0 ? 1.0 : -1.0;
  const double da = df(a), db = df(b);
  if (!(s * da < 0.0 && s * db > 0.0)) return;
  const auto [xe, ge] = boost::math::tools::brent_find_minima([&](double x) { return s * f(x); }, a, b, 52);
  if (std::abs(ge) < kTouchLevel) {
    if (const auto t = tangent_point(xe, a, b)) {
      out.roots.push_back(*t);
      out.tangential.push_back(true);
      return;
    }
    std::ostringstream msg;
    msg << "cannot classify near-touch at x = " << xe << " (|f| = " << std::abs(ge) << ")";
    throw Error(ErrorCode::UnresolvedCell, msg.str());
  }
  if (ge > 0.0) return;
  const double fe = f(xe);
  push(bisect(f, a, xe, fa, fe));
  push(bisect(f, xe, b, fe, fb));
}

}  // namespace

double TrigParams::f(double x) const {
  double v = std::cos(x) + alpha * std::cos(beta * x);
  if (phi) v += phi->value(x);
  return v;
}

double TrigParams::df(double x) const {
  double v = -std::sin(x) - alpha * beta * std::sin(beta * x);
  if (phi) v += phi->derivative(x);
  return v;
}

void validate(const TrigParams& p) {
  if (!(p.alpha >= 0.0 && p.alpha < 1.0) || !(p.beta >= 0.0)) {
    std::ostringstream msg;
    msg << "need 0 <= alpha < 1 and beta >= 0 (alpha = " << p.alpha << ", beta = " << p.beta << ")";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  if (p.phi && (!p.phi->value || !p.phi->derivative)) {
    throw Error(ErrorCode::InvalidArgument, "perturbation needs a value and a first derivative");
  }
}

std::size_t ZeroCount::tangential_count() const {
  return static_cast<std::size_t>(std::count(tangential.begin(), tangential.end(), true));
}

ZeroCount find_zeros(const std::function<double(double)>& f, const std::function<double(double)>& df, double a,
                     double b, double grid_step, unsigned threads) {
  if (!(b > a) || !(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "need a < b and grid_step > 0");
  const auto cells = static_cast<std::size_t>(std::ceil((b - a) / grid_step));
  const double h = (b - a) / static_cast<double>(cells);
  const std::size_t chunks = (cells + kCellsPerChunk - 1) / kCellsPerChunk;

  // Chunks own the half-open cells [x_i, x_{i+1}), so a root on a shared
  // node is seen exactly once.
  auto parts = parallel_map<CellRoots>(chunks, threads, [&](std::size_t c) {
    CellRoots out;
    const std::size_t first = c * kCellsPerChunk;
    const std::size_t last = std::min(cells, first + kCellsPerChunk);
    double xa = a + h * static_cast<double>(first);
    double fa = f(xa);
    for (std::size_t i = first; i < last; ++i) {
      const double xb = i + 1 == cells ? b : a + h * static_cast<double>(i + 1);
      const double fb = f(xb);
      scan_cell(f, df, xa, xb, fa, fb, out);
      xa = xb;
      fa = fb;
    }
    return out;
  });

  ZeroCount out;
  for (auto& p : parts) {
    out.roots.insert(out.roots.end(), p.roots.begin(), p.roots.end());
    out.tangential.insert(out.tangential.end(), p.tangential.begin(), p.tangential.end());
  }
  return out;
}

double max_grid_step(double beta) { return std::min(kPi, beta > 0.0 ? kPi / beta : kPi) / 8.0; }

ZeroCount brute_count(const TrigParams& params, double a, double b, double grid_step, unsigned threads) {
  validate(params);
  if (grid_step > max_grid_step(params.beta) * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "grid_step " << grid_step << " exceeds " << max_grid_step(params.beta);
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  ZeroCount z = find_zeros([&](double x) { return params.f(x); }, [&](double x) { return params.df(x); }, a, b,
                           grid_step, threads);
  // find_zeros works on [a, b); a zero exactly at b still counts.
  if (params.f(b) == 0.0) {
    z.roots.push_back(b);
    z.tangential.push_back(tangency_test(params, b));
  }
  return z;
}

ZeroCount brute_count(const TrigParams& params, double R, double grid_step, unsigned threads) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  return brute_count(params, 0.0, R, grid_step, threads);
}

double AngleConstants::nu() const { return 1.0 + (2.0 / kPi) * mu; }

AngleConstants angle_constants(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(alpha * beta > 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "angle constants need 0 < alpha < 1 and alpha * beta > 1");
  }
  const double root = std::sqrt(beta * beta - 1.0);
  const double s = std::sqrt(alpha * alpha * beta * beta - 1.0);
  const double c = std::sqrt(1.0 - alpha * alpha);
  auto as = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
  AngleConstants k{};
  k.xi = as(s / root);
  k.eta = as(c / (alpha * root));
  k.xi_prime = as(beta * c / root);
  k.eta_prime = as(s / (alpha * root));
  k.mu = beta * k.xi - k.eta_prime;
  const double centre = -beta * kPi / 2.0 + 3.0 * kPi / 2.0;
  k.j_lo = centre - k.mu;
  k.j_hi = centre + k.mu;
  return k;
}

namespace {

// 1 inside J, 1/2 on its ends, 0 outside.
double closed_indicator(double t, double lo, double hi) {
  const double eps = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (std::abs(t - lo) <= eps || std::abs(t - hi) <= eps) return 0.5;
  return t > lo && t < hi ? 1.0 : 0.0;
}

}  // namespace

double multiplicity_m(double t, const AngleConstants& c) {
  if (!(c.mu > 0.0)) throw Error(ErrorCode::OutOfDomain, "J is empty");
  // t - 2 pi n in [j_lo, j_hi]  <=>  n in [(t - j_hi) / 2pi, (t - j_lo) / 2pi].
  const auto n_lo = static_cast<long>(std::floor((t - c.j_hi) / (2.0 * kPi))) - 1;
  const auto n_hi = static_cast<long>(std::ceil((t - c.j_lo) / (2.0 * kPi))) + 1;
  double sum = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) sum += closed_indicator(t - 2.0 * kPi * static_cast<double>(n), c.j_lo, c.j_hi);
  return 1.0 + 2.0 * sum;
}

double rational_density(long p, long q, double alpha) {
  if (p <= 0 || q <= 0) throw Error(ErrorCode::InvalidArgument, "p and q must be positive");
  if (std::gcd(p, q) != 1) throw Error(ErrorCode::NotCoprime, "p and q must be coprime");
  const double beta = static_cast<double>(p) / static_cast<double>(q);
  const AngleConstants c = angle_constants(alpha, beta);
  const double step = 2.0 * kPi / static_cast<double>(q);
  const auto n_lo = static_cast<long>(std::floor(c.j_lo / step)) - 1;
  const auto n_hi = static_cast<long>(std::ceil(c.j_hi / step)) + 1;
  double sum = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) {
    const double t = step * static_cast<double>(n);
    const double scale = std::max(1.0, std::abs(t));
    if (std::abs(t - c.j_lo) < 1e-9 * scale || std::abs(t - c.j_hi) < 1e-9 * scale) {
      std::ostringstream msg;
      msg << "2 pi " << n << "/" << q << " is an endpoint of J";
      throw Error(ErrorCode::DegenerateEndpoint, msg.str());
    }
    sum += closed_indicator(t, c.j_lo, c.j_hi);
  }
  return (1.0 + 2.0 * sum / static_cast<double>(q)) / kPi;
}

bool tangency_test(const TrigParams& params, double x) {
  const double v = params.f(x);
  const double d = params.df(x);
  return v * v + d * d < kTangencyEnergy;
}

std::string count_trace_csv(const ZeroCount& zeros, std::span<const double> radii) {
  std::vector<double> sorted = zeros.roots;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "R,count,density\n";
  for (double R : radii) {
    const auto n = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), R) - sorted.begin());
    out += format_double(R) + "," + std::to_string(n) + "," + format_double(static_cast<double>(n) / R) + "\n";
  }
  return out;
}

}  // namespace zeromode
