#include "zeromode/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "zeromode/closedform.hpp"
#include "zeromode/error.hpp"
#include "zeromode/parallel.hpp"
#include "zeromode/prufer.hpp"

namespace zeromode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeparationFloor = 1e-7;
// Levels this close to an interior extremum of the Hermite interpolant are
// treated as possible double crossings.
constexpr double kTangencyMargin = 0.05;

struct Node {
  double gamma;
  double delta;
  double slope;
};

// Grid step under which delta cannot move by more than about pi/4 between
// nodes when |d delta / d gamma| is of the order of the L1 norm.
double scan_step(const Potential& V, double k, double diameter) {
  return kPi / (4.0 * (1.1 * l1_norm(V) + k * diameter));
}

struct ScanContext {
  const Potential& V;
  double k;
  PropagationMethod method;
  double truncation;
  int max_depth;

  Node node(double gamma) const {
    const DeltaEvaluation e = evaluate_delta(V, gamma, k, true, method, truncation);
    return {gamma, e.delta, e.derivative};
  }
  double delta(double gamma) const { return evaluate_delta(V, gamma, k, false, method, truncation).delta; }
};

// Cubic Hermite interpolant of delta on [a.gamma, b.gamma] in t in [0, 1].
struct Hermite {
  double c0, c1, c2, c3;

  Hermite(const Node& a, const Node& b) {
    const double h = b.gamma - a.gamma;
    const double s0 = a.slope * h;
    const double s1 = b.slope * h;
    c0 = a.delta;
    c1 = s0;
    c2 = 3.0 * (b.delta - a.delta) - 2.0 * s0 - s1;
    c3 = 2.0 * (a.delta - b.delta) + s0 + s1;
  }

  double operator()(double t) const { return c0 + t * (c1 + t * (c2 + t * c3)); }

  // Interior critical points in (0, 1), ascending.
  std::vector<double> critical_points() const {
    std::vector<double> out;
    const double A = 3.0 * c3, B = 2.0 * c2, C = c1;
    if (std::abs(A) < 1e-14 * (std::abs(B) + std::abs(C))) {
      if (B != 0.0) out.push_back(-C / B);
    } else {
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (B + std::copysign(sq, B));
        out.push_back(q / A);
        if (q != 0.0) out.push_back(C / q);
      }
    }
    std::erase_if(out, [](double t) { return !(t > 0.0 && t < 1.0); });
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Half-integer multiples of pi strictly between lo and hi (either order).
std::vector<double> levels_between(double x, double y) {
  const double lo = std::min(x, y), hi = std::max(x, y);
  std::vector<double> out;
  for (double n = std::ceil((lo - kPi / 2.0) / kPi); kPi / 2.0 + n * kPi <= hi; n += 1.0) {
    const double level = kPi / 2.0 + n * kPi;
    if (level > lo && level < hi) out.push_back(level);
  }
  return out;
}

SpectralRoot bisect_level(const ScanContext& ctx, double a, double fa_sign, double b, double level, double tol) {
  // Invariant: sign(delta(a) - level) == fa_sign, opposite at b.
  double mid = 0.5 * (a + b);
  double value = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    value = ctx.delta(mid) - level;
    if (value == 0.0 || std::abs(value) < 1e-3 * tol) break;
    if ((value > 0.0) == (fa_sign > 0.0)) {
      a = mid;
    } else {
      b = mid;
    }
    if (b - a < 1e-15 * std::max(1.0, std::abs(mid))) break;
  }
  if (std::isnan(value)) value = ctx.delta(mid) - level;
  return {{mid, 0.0}, std::abs(value), RootMethod::DeltaBisect, 1};
}

// Roots of delta - level in a cell whose endpoint values straddle it or
// whose interpolant dips across it.
void resolve_cell(const ScanContext& ctx, const Node& a, const Node& b, int depth, double tol,
                  std::vector<SpectralRoot>& out) {
  const Hermite p(a, b);
  const auto crit = p.critical_points();
  bool ambiguous = std::abs(b.delta - a.delta) > kPi / 2.0;
  if (!ambiguous && !crit.empty()) {
    // Extra crossings happen only if some level lies beyond an interior
    // extremum relative to its neighbouring values.
    std::vector<double> ts{0.0};
    ts.insert(ts.end(), crit.begin(), crit.end());
    ts.push_back(1.0);
    for (std::size_t i = 1; i + 1 < ts.size() && !ambiguous; ++i) {
      const double pe = p(ts[i]);
      const double lo = std::min({pe, a.delta, b.delta}) - kTangencyMargin;
      const double hi = std::max({pe, a.delta, b.delta}) + kTangencyMargin;
      for (double level : levels_between(lo, hi)) {
        const bool endpoint_cross = (a.delta - level) * (b.delta - level) < 0.0;
        const bool near_extremum = std::abs(pe - level) < kTangencyMargin;
        const bool overshoot = (pe - level) * (a.delta - level) < 0.0 || (pe - level) * (b.delta - level) < 0.0;
        if (near_extremum || (overshoot && !endpoint_cross) ||
            (overshoot && endpoint_cross && (pe - level) * (a.delta - level) < 0.0 &&
             (pe - level) * (b.delta - level) < 0.0)) {
          ambiguous = true;
          break;
        }
      }
    }
  }

  if (ambiguous && depth < ctx.max_depth) {
    const Node m = ctx.node(0.5 * (a.gamma + b.gamma));
    resolve_cell(ctx, a, m, depth + 1, tol, out);
    resolve_cell(ctx, m, b, depth + 1, tol, out);
    return;
  }
  if (ambiguous && std::abs(b.delta - a.delta) > kPi / 2.0) {
    std::ostringstream msg;
    msg << "delta jumps by " << std::abs(b.delta - a.delta) << " on [" << a.gamma << ", " << b.gamma
        << "] after " << depth << " halvings";
    throw Error(ErrorCode::ScanStepTooCoarse, msg.str());
  }

  // Split at the (finely resolved) interior extrema so each piece is
  // monotone, then bisect every level crossed.
  std::vector<std::pair<double, double>> pts{{a.gamma, a.delta}};
  if (ambiguous) {
    for (double t : crit) {
      const double g = a.gamma + t * (b.gamma - a.gamma);
      pts.emplace_back(g, ctx.delta(g));
    }
  }
  pts.emplace_back(b.gamma, b.delta);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [ga, da] = pts[i];
    const auto [gb, db] = pts[i + 1];
    for (double level : levels_between(da, db)) {
      out.push_back(bisect_level(ctx, ga, da - level, gb, level, tol));
    }
  }
}

void sort_and_merge(std::vector<SpectralRoot>& roots) {
  std::sort(roots.begin(), roots.end(), [](const SpectralRoot& x, const SpectralRoot& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  std::vector<SpectralRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && std::abs(merged.back().value - r.value) < kSeparationFloor) {
      if (r.residual < merged.back().residual) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  roots = std::move(merged);
}

}  // namespace

std::string_view to_string(RootMethod m) {
  switch (m) {
    case RootMethod::DeltaBisect:
      return "DeltaBisect";
    case RootMethod::DeterminantBrent:
      return "DeterminantBrent";
    case RootMethod::WindingNewton:
      return "WindingNewton";
  }
  return "?";
}

GammaSpectrum real_spectrum(const Potential& V, double k, double R, const RealSpectrumOptions& opts) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  GammaSpectrum out{{}, {0.0, R, 0.0, 0.0}, k, std::nullopt};
  const auto* pw = std::get_if<PiecewiseConstantPotential>(&V);
  if (pw != nullptr && pw->trivial()) return out;

  double truncation = 0.0;
  double diameter = 0.0;
  if (pw != nullptr) {
    diameter = pw->right() - pw->left();
  } else {
    truncation = truncation_radius(std::get<AnalyticPotential>(V), R);
    diameter = 2.0 * truncation;
  }
  const ScanContext ctx{V, k, default_method(V), truncation, opts.max_restarts};

  const double h0 = scan_step(V, k, diameter);
  const auto cells = static_cast<std::size_t>(std::ceil(R / h0));
  const double h = R / static_cast<double>(cells);
  const auto nodes = parallel_map<Node>(cells + 1, opts.threads, [&](std::size_t i) {
    return ctx.node(i == cells ? R : h * static_cast<double>(i));
  });

  auto found = parallel_map<std::vector<SpectralRoot>>(cells, opts.threads, [&](std::size_t i) {
    std::vector<SpectralRoot> roots;
    resolve_cell(ctx, nodes[i], nodes[i + 1], 0, opts.tol, roots);
    return roots;
  });
  for (auto& chunk : found) out.roots.insert(out.roots.end(), chunk.begin(), chunk.end());
  std::erase_if(out.roots, [](const SpectralRoot& r) { return !(r.value.real() > 0.0); });
  sort_and_merge(out.roots);

  if (pw != nullptr && opts.cross_check) {
    const GammaSpectrum det = real_spectrum_determinant(*pw, k, R, h / 4.0);
    if (det.roots.size() == out.roots.size()) {
      double gap = 0.0;
      for (std::size_t i = 0; i < det.roots.size(); ++i) {
        gap = std::max(gap, std::abs(det.roots[i].value - out.roots[i].value));
      }
      out.cross_check_gap = gap;
    } else {
      out.cross_check_gap = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

GammaSpectrum real_spectrum_determinant(const PiecewiseConstantPotential& V, double k, double R, double step,
                                        double tol) {
  if (!(R > 0.0) || !(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "R and step must be positive");
  GammaSpectrum out{{}, {0.0, R, 0.0, 0.0}, k, std::nullopt};
  if (V.trivial()) return out;
  auto D = [&](double g) { return determinant(V, g, k).real(); };
  const auto cells = static_cast<std::size_t>(std::ceil(R / step));
  const double h = R / static_cast<double>(cells);
  double ga = 0.0;
  double fa = D(ga);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double gb = i == cells ? R : h * static_cast<double>(i);
    const double fb = D(gb);
    if (fb == 0.0) {
      if (gb > 0.0) out.roots.push_back({{gb, 0.0}, 0.0, RootMethod::DeterminantBrent, 1});
    } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      std::uintmax_t max_iter = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          D, ga, gb, fa, fb,
          [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); }, max_iter);
      out.roots.push_back({{0.5 * (lo + hi), 0.0}, hi - lo, RootMethod::DeterminantBrent, 1});
    }
    ga = gb;
    fa = fb;
  }
  sort_and_merge(out.roots);
  return out;
}

std::size_t counting_function(const GammaSpectrum& spectrum, double R) {
  if (R > spectrum.search_region.re_max) {
    std::ostringstream msg;
    msg << "spectrum computed up to " << spectrum.search_region.re_max << ", asked for " << R;
    throw Error(ErrorCode::RegionTooSmall, msg.str());
  }
  return static_cast<std::size_t>(std::count_if(spectrum.roots.begin(), spectrum.roots.end(), [R](const auto& r) {
    return r.value.imag() == 0.0 && r.value.real() >= 0.0 && r.value.real() <= R;
  }));
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

struct BoundaryRootHit {
  std::complex<double> where;
};

class WindingTracker {
 public:
  WindingTracker(const PiecewiseConstantPotential& V, double k) : V_(V), k_(k) {
    const double diameter = V.right() - V.left();
    spacing_ = scan_step(V, k, diameter);
  }

  cplx D(cplx z) const { return determinant(V_, z, k_); }

  // Continuous change of arg D along the segment z0 -> z1.
  double segment(cplx z0, cplx z1) const {
    const double len = std::abs(z1 - z0);
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(len / spacing_)));
    double total = 0.0;
    cplx za = z0;
    cplx fa = checked(za);
    for (std::size_t i = 1; i <= n; ++i) {
      const cplx zb = i == n ? z1 : z0 + (z1 - z0) * (static_cast<double>(i) / static_cast<double>(n));
      const cplx fb = checked(zb);
      total += refine(za, fa, zb, fb, 0);
      za = zb;
      fa = fb;
    }
    return total;
  }

  int winding(const Rectangle& r) const {
    const cplx a{r.re_min, r.im_min}, b{r.re_max, r.im_min}, c{r.re_max, r.im_max}, d{r.re_min, r.im_max};
    const double total = segment(a, b) + segment(b, c) + segment(c, d) + segment(d, a);
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-3) {
      std::ostringstream msg;
      msg << "non-integral winding " << turns;
      throw Error(ErrorCode::WindingMismatch, msg.str());
    }
    return static_cast<int>(rounded);
  }

 private:
  cplx checked(cplx z) const {
    const cplx f = D(z);
    if (f == cplx{0.0} || !std::isfinite(std::abs(f))) throw BoundaryRootHit{z};
    return f;
  }

  double refine(cplx za, cplx fa, cplx zb, cplx fb, int depth) const {
    const double d = std::arg(fb / fa);
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = checked(zm);
    const double d1 = std::arg(fm / fa);
    const double d2 = std::arg(fb / fm);
    if (std::abs(d) < kPi / 2.0 && std::abs(d1 + d2 - d) < 1e-9) return d;
    if (depth > 48) throw BoundaryRootHit{zm};
    return refine(za, fa, zm, fm, depth + 1) + refine(zm, fm, zb, fb, depth + 1);
  }

  const PiecewiseConstantPotential& V_;
  double k_;
  double spacing_;
};

Rectangle nudged(const Rectangle& r, double eps) {
  return {r.re_min - eps, r.re_max + eps, r.im_min - eps, r.im_max + eps};
}

// Off-centre split fractions so shared edges rarely meet a root exactly.
constexpr std::array<double, 4> kSplitFractions{0.5 + 0.0123, 0.5 - 0.0371, 0.5 + 0.0719, 0.5 - 0.1013};

struct Cell {
  Rectangle rect;
  int winding;
  bool leaf = false;
};

std::array<Rectangle, 4> quadrants(const Rectangle& r, double f) {
  const double xm = r.re_min + f * r.width();
  const double ym = r.im_min + f * r.height();
  return {Rectangle{r.re_min, xm, r.im_min, ym}, Rectangle{xm, r.re_max, r.im_min, ym},
          Rectangle{r.re_min, xm, ym, r.im_max}, Rectangle{xm, r.re_max, ym, r.im_max}};
}

SpectralRoot polish(const WindingTracker& w, const Cell& cell, double tol) {
  const Rectangle& r = cell.rect;
  cplx z{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
  double last_step = std::numeric_limits<double>::infinity();
  const double diag = std::hypot(r.width(), r.height());
  for (int it = 0; it < 60; ++it) {
    const double hstep = 1e-6 * std::max(1.0, std::abs(z));
    const cplx f = w.D(z);
    if (f == cplx{0.0}) {
      last_step = 0.0;
      break;
    }
    const cplx df = (w.D(z + hstep) - w.D(z - hstep)) / (2.0 * hstep);
    if (df == cplx{0.0}) break;
    const cplx step = f / df;
    z -= step;
    last_step = std::abs(step);
    if (last_step < tol * std::max(1.0, std::abs(z))) break;
    if (std::abs(z - cplx{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)}) > 10.0 * diag) break;
  }
  // Newton stalls on clusters; keep the cell centre then.
  if (!nudged(r, diag).contains(z)) {
    z = {0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
    last_step = diag;
  }
  return {z, last_step, RootMethod::WindingNewton, cell.winding};
}

}  // namespace

int winding_number(const PiecewiseConstantPotential& V, double k, const Rectangle& rect) {
  if (V.trivial()) throw Error(ErrorCode::TrivialPotential, "determinant of the zero potential");
  const WindingTracker w(V, k);
  try {
    return w.winding(rect);
  } catch (const BoundaryRootHit& hit) {
    std::ostringstream msg;
    msg << "determinant vanishes on the boundary near " << hit.where;
    throw Error(ErrorCode::BoundaryRoot, msg.str());
  }
}

GammaSpectrum complex_spectrum(const PiecewiseConstantPotential& V, double k, Rectangle rect,
                               const ComplexSpectrumOptions& opts) {
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle must have positive width and height");
  }
  if (V.trivial()) throw Error(ErrorCode::TrivialPotential, "determinant of the zero potential");
  const WindingTracker w(V, k);

  int top = 0;
  try {
    top = w.winding(rect);
  } catch (const BoundaryRootHit&) {
    rect = nudged(rect, 1e-6);
    try {
      top = w.winding(rect);
    } catch (const BoundaryRootHit& hit) {
      std::ostringstream msg;
      msg << "determinant vanishes on the boundary near " << hit.where;
      throw Error(ErrorCode::BoundaryRoot, msg.str());
    }
  }
  if (top < 0) throw Error(ErrorCode::WindingMismatch, "negative winding of an entire function");

  GammaSpectrum out{{}, rect, k, std::nullopt};
  std::vector<Cell> work;
  if (top > 0) work.push_back({rect, top, false});
  std::vector<Cell> leaves;
  while (!work.empty()) {
    std::vector<Cell> next;
    // Each level's cells are independent.
    auto split = parallel_map<std::vector<Cell>>(work.size(), opts.threads, [&](std::size_t i) {
      const Cell& c = work[i];
      std::vector<Cell> children;
      if (std::hypot(c.rect.width(), c.rect.height()) < opts.min_cell) {
        children.push_back({c.rect, c.winding, true});
        return children;
      }
      for (double f : kSplitFractions) {
        children.clear();
        int sum = 0;
        try {
          for (const Rectangle& q : quadrants(c.rect, f)) {
            const int n = w.winding(q);
            if (n < 0) throw Error(ErrorCode::WindingMismatch, "negative winding");
            sum += n;
            if (n != 0) children.push_back({q, n, false});
          }
        } catch (const BoundaryRootHit&) {
          continue;  // a split line met a root; try another split
        } catch (const Error& e) {
          if (e.code() != ErrorCode::WindingMismatch) throw;
          continue;
        }
        if (sum == c.winding) return children;
      }
      std::ostringstream msg;
      msg << "subdivision lost roots in [" << c.rect.re_min << ", " << c.rect.re_max << "] x [" << c.rect.im_min
          << ", " << c.rect.im_max << "]";
      throw Error(ErrorCode::WindingMismatch, msg.str());
    });
    for (auto& children : split) {
      for (auto& c : children) {
        if (c.leaf) {
          leaves.push_back(c);
        } else {
          next.push_back(c);
        }
      }
    }
    work = std::move(next);
  }

  out.roots = parallel_map<SpectralRoot>(leaves.size(), opts.threads,
                                         [&](std::size_t i) { return polish(w, leaves[i], opts.tol); });
  std::sort(out.roots.begin(), out.roots.end(), [](const SpectralRoot& x, const SpectralRoot& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  int total = 0;
  for (const auto& r : out.roots) total += r.multiplicity;
  if (total != top) throw Error(ErrorCode::WindingMismatch, "root count differs from the boundary winding");
  return out;
}

// ---------------------------------------------------------------------------
// Phase plots and export

std::complex<double> PhaseGrid::centre(std::size_t ix, std::size_t iy) const {
  const double re = rectangle.re_min + (static_cast<double>(ix) + 0.5) * rectangle.width() / static_cast<double>(nx);
  const double im = rectangle.im_max - (static_cast<double>(iy) + 0.5) * rectangle.height() / static_cast<double>(ny);
  return {re, im};
}

PhaseGrid phase_grid(const PiecewiseConstantPotential& V, double k, Rectangle rect, std::size_t nx, std::size_t ny,
                     unsigned threads) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 x 2 cells");
  if (!(rect.width() > 0.0) || !(rect.height() > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle must have positive width and height");
  }
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  if (V.trivial()) throw Error(ErrorCode::TrivialPotential, "determinant of the zero potential");
  PhaseGrid grid{rect, nx, ny, {}};
  grid.arg_values = parallel_map<double>(nx * ny, threads, [&](std::size_t i) {
    return std::arg(determinant(V, grid.centre(i % nx, i / nx), k));
  });
  return grid;
}

std::string to_json_lines(const GammaSpectrum& spectrum) {
  std::string out;
  for (const auto& r : spectrum.roots) {
    out += "{\"re\":" + format_double(r.value.real()) + ",\"im\":" + format_double(r.value.imag()) +
           ",\"residual\":" + format_double(r.residual) + ",\"method\":\"" + std::string(to_string(r.method)) + "\"";
    if (r.multiplicity != 1) out += ",\"multiplicity\":" + std::to_string(r.multiplicity);
    out += "}\n";
  }
  return out;
}

namespace {

std::array<unsigned char, 3> hue_to_rgb(double hue) {
  const double h6 = 6.0 * (hue - std::floor(hue));
  const double x = 1.0 - std::abs(std::fmod(h6, 2.0) - 1.0);
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h6) % 6) {
    case 0: r = 1; g = x; break;
    case 1: r = x; g = 1; break;
    case 2: g = 1; b = x; break;
    case 3: g = x; b = 1; break;
    case 4: r = x; b = 1; break;
    default: r = 1; b = x; break;
  }
  auto byte = [](double c) { return static_cast<unsigned char>(std::lround(255.0 * c)); };
  return {byte(r), byte(g), byte(b)};
}

}  // namespace

std::string to_ppm(const PhaseGrid& grid) {
  std::string out = "P6\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) + "\n255\n";
  out.reserve(out.size() + 3 * grid.arg_values.size());
  for (double a : grid.arg_values) {
    const auto rgb = hue_to_rgb((a + kPi) / (2.0 * kPi));
    out.append(reinterpret_cast<const char*>(rgb.data()), 3);
  }
  return out;
}

std::string to_csv(const PhaseGrid& grid) {
  std::string out = "re,im,arg\n";
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const auto z = grid.centre(ix, iy);
      out += format_double(z.real()) + "," + format_double(z.imag()) + "," + format_double(grid.at(ix, iy)) + "\n";
    }
  }
  return out;
}

}  // namespace zeromode
