#include "zeromode/potential.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zeromode/asymptotics.hpp"
#include "zeromode/error.hpp"

namespace zeromode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double integrate_abs(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  auto g = [&](double x) { return std::abs(f(x)); };
  return gauss_kronrod<double, 61>::integrate(g, a, b, 20, 1e-12);
}

double integrate_signed(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-12);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(s) + "'");
  }
  return out;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_double(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(std::span<const double> xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

// Index range [first, last) of the pieces after dropping zero-valued pieces at
// either end.
std::pair<std::size_t, std::size_t> nonzero_span(const PiecewiseConstantPotential& V) {
  std::size_t first = 0;
  std::size_t last = V.piece_count();
  while (first < last && V.values()[first] == 0.0) ++first;
  while (last > first && V.values()[last - 1] == 0.0) --last;
  return {first, last};
}

AnalyticPotential named_analytic(std::string_view name, const std::vector<double>& params) {
  if (name == "hrp") {
    if (!params.empty()) throw Error(ErrorCode::ParseError, "hrp takes no parameters");
    return hrp_potential();
  }
  throw Error(ErrorCode::ParseError, "unknown analytic potential '" + std::string(name) + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

PiecewiseConstantPotential::PiecewiseConstantPotential(std::vector<double> breakpoints,
                                                       std::vector<double> values) {
  if (breakpoints.size() < 2) {
    throw Error(ErrorCode::LengthMismatch, "need at least two breakpoints");
  }
  if (values.size() + 1 != breakpoints.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(breakpoints.size()) + " breakpoints but " +
                                               std::to_string(values.size()) + " values");
  }
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i]) || !(breakpoints[i + 1] >= breakpoints[i])) {
      throw Error(ErrorCode::NonMonotoneBreakpoints, "breakpoints must be increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite potential value");
  }
  if (!(breakpoints.back() > breakpoints.front())) {
    throw Error(ErrorCode::NonMonotoneBreakpoints, "support has zero length");
  }
  breakpoints_.push_back(breakpoints.front());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (breakpoints[j + 1] == breakpoints[j]) continue;
    breakpoints_.push_back(breakpoints[j + 1]);
    values_.push_back(values[j]);
  }
}

double PiecewiseConstantPotential::operator()(double x) const {
  if (x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

bool PiecewiseConstantPotential::trivial() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

AnalyticPotential::AnalyticPotential(std::string name, std::vector<double> params,
                                     std::function<double(double)> base, double decay_hint)
    : name_(std::move(name)), params_(std::move(params)), base_(std::move(base)), decay_hint_(decay_hint) {
  if (!(decay_hint_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay hint must be positive");
}

double AnalyticPotential::operator()(double x) const {
  const double y = mirrored_ ? -(x - shift_) : (x - shift_);
  return sign_ * base_(y);
}

double AnalyticPotential::tail_right(double X) const {
  return integrate_abs([this](double x) { return (*this)(x); }, X, kInf);
}

double AnalyticPotential::tail_left(double X) const {
  return integrate_abs([this](double x) { return (*this)(x); }, -kInf, -X);
}

AnalyticPotential AnalyticPotential::translated(double c) const {
  AnalyticPotential out = *this;
  out.shift_ += c;
  return out;
}

AnalyticPotential AnalyticPotential::negated() const {
  AnalyticPotential out = *this;
  out.sign_ = -out.sign_;
  return out;
}

AnalyticPotential AnalyticPotential::mirrored_copy() const {
  // x -> -x maps shift s to -s and flips orientation.
  AnalyticPotential out = *this;
  out.mirrored_ = !out.mirrored_;
  out.shift_ = -out.shift_;
  return out;
}

PiecewiseConstantPotential build_w(std::vector<double> breakpoints, std::vector<double> values) {
  return PiecewiseConstantPotential(std::move(breakpoints), std::move(values));
}

double evaluate(const Potential& V, double x) {
  return std::visit([x](const auto& p) { return p(x); }, V);
}

double l1_norm(const Potential& V) {
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < pw->piece_count(); ++j) sum += std::abs(pw->values()[j]) * pw->piece_length(j);
    return sum;
  }
  const auto& an = std::get<AnalyticPotential>(V);
  return integrate_abs([&an](double x) { return an(x); }, -kInf, kInf);
}

double integral(const Potential& V) {
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) {
    double sum = 0.0;
    for (std::size_t j = 0; j < pw->piece_count(); ++j) sum += pw->values()[j] * pw->piece_length(j);
    return sum;
  }
  const auto& an = std::get<AnalyticPotential>(V);
  return integrate_signed([&an](double x) { return an(x); }, -kInf, kInf);
}

std::pair<double, double> support(const Potential& V) {
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) return {pw->left(), pw->right()};
  const auto& an = std::get<AnalyticPotential>(V);
  return {an.shift() - an.decay_hint(), an.shift() + an.decay_hint()};
}

GapStructure classify_gaps(const PiecewiseConstantPotential& V) {
  if (V.trivial()) throw Error(ErrorCode::TrivialPotential, "cannot classify the zero potential");
  const auto [first, last] = nonzero_span(V);
  GapStructure out{GapKind::NoGap, 0, {}};
  std::size_t j = first;
  while (j < last) {
    SupportComponent comp{V.breakpoints()[j], 0.0, 0.0};
    while (j < last && V.values()[j] != 0.0) {
      comp.integral += V.values()[j] * V.piece_length(j);
      ++j;
    }
    comp.b = V.breakpoints()[j];
    out.components.push_back(comp);
    while (j < last && V.values()[j] == 0.0) ++j;
  }
  out.gap_count = out.components.size() - 1;
  out.kind = out.gap_count == 0 ? GapKind::NoGap : out.gap_count == 1 ? GapKind::OneGap : GapKind::MultiGap;
  return out;
}

OneGapParams one_gap_params(const PiecewiseConstantPotential& V, double k) {
  const GapStructure gaps = classify_gaps(V);
  if (gaps.kind != GapKind::OneGap) throw Error(ErrorCode::NotOneGap, "potential does not have exactly one gap");
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");
  const auto& c1 = gaps.components[0];
  const auto& c2 = gaps.components[1];
  const double sum = c1.integral + c2.integral;
  if (std::abs(sum) <= 1e-14 * l1_norm(V)) {
    throw Error(ErrorCode::ZeroIntegral, "v1 + v2 = 0; the real spectrum is finite");
  }
  OneGapParams p{};
  p.gap_length = c2.a - c1.b;
  p.alpha = std::tanh(k * p.gap_length);
  p.beta = std::abs((c1.integral - c2.integral) / sum);
  p.k = k;
  p.v1 = c1.integral;
  p.v2 = c2.integral;
  return p;
}

bool is_single_signed(const PiecewiseConstantPotential& V) {
  const auto vals = V.values();
  return std::all_of(vals.begin(), vals.end(), [](double v) { return v >= 0.0; }) ||
         std::all_of(vals.begin(), vals.end(), [](double v) { return v <= 0.0; });
}

bool is_antisymmetric(const PiecewiseConstantPotential& V, double tol) {
  if (V.trivial()) return true;
  const auto [first, last] = nonzero_span(V);
  const double lo = V.breakpoints()[first];
  const double hi = V.breakpoints()[last];
  const double c = 0.5 * (lo + hi);
  const std::size_t n = last - first;
  for (std::size_t i = 0; i <= n; ++i) {
    const double b = V.breakpoints()[first + i];
    const double mirrored = 2.0 * c - V.breakpoints()[last - i];
    if (std::abs(b - mirrored) > tol * (1.0 + std::abs(b))) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(V.values()[first + i] + V.values()[last - 1 - i]) > tol) return false;
  }
  return true;
}

namespace {

// A number in (lo, hi) whose continued fraction is a prefix of the midpoint's
// followed by an all-ones tail. Its rational approximations are as poor as
// possible, so irrational-beta asymptotics show up at small radii.
double badly_approximable_between(double lo, double hi) {
  const double margin = 0.1 * (hi - lo);
  double x = 0.5 * (lo + hi);
  double h0 = 1.0, h1 = 0.0, k0 = 0.0, k1 = 1.0;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(x);
    const double h2 = a * h0 + h1, k2 = a * k0 + k1;
    h1 = h0;
    h0 = h2;
    k1 = k0;
    k0 = k2;
    const double b = (std::numbers::phi * h0 + h1) / (std::numbers::phi * k0 + k1);
    if (b > lo + margin && b < hi - margin) return b;
    if (x - a < 1e-12) break;
    x = 1.0 / (x - a);
  }
  return lo + (hi - lo) / std::numbers::phi;
}

}  // namespace

PiecewiseConstantPotential synthesize_one_gap(double v, double A, double u, double k) {
  if (!(v > 0.0 && v < A && A < u)) {
    throw Error(ErrorCode::InfeasibleTriple, "need 0 < v < A < u");
  }
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "k must be positive");

  const double w = v * badly_approximable_between(A / v, u / v);
  const double v0 = 0.5 * (u - w);
  const double v1 = 0.5 * (v - w);
  const double v2 = 0.5 * (v + w);
  const double beta = w / v;

  // nu(., beta) increases from 1 to beta on (1/beta, 1).
  const double want = A / v;
  double lo = 1.0 / beta;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (nu(mid, beta) < want) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = 0.5 * (lo + hi);
  const double g = std::atanh(alpha) / k;
  return PiecewiseConstantPotential({-1.0, 0.0, g, g + 1.0, g + 2.0}, {v1, 0.0, v2 + v0, -v0});
}

AnalyticPotential hrp_potential() {
  return AnalyticPotential("hrp", {}, [](double x) { return -1.0 / std::cosh(x); }, 40.0);
}

PiecewiseConstantPotential transform(const PiecewiseConstantPotential& V, const TransformOp& op) {
  std::vector<double> b(V.breakpoints().begin(), V.breakpoints().end());
  std::vector<double> vals(V.values().begin(), V.values().end());
  if (const auto* t = std::get_if<Translate>(&op)) {
    for (double& x : b) x += t->c;
  } else if (std::holds_alternative<Negate>(op)) {
    for (double& x : vals) x = -x;
  } else {
    std::reverse(b.begin(), b.end());
    for (double& x : b) x = -x;
    std::reverse(vals.begin(), vals.end());
  }
  return PiecewiseConstantPotential(std::move(b), std::move(vals));
}

Potential transform(const Potential& V, const TransformOp& op) {
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) return transform(*pw, op);
  const auto& an = std::get<AnalyticPotential>(V);
  if (const auto* t = std::get_if<Translate>(&op)) return an.translated(t->c);
  if (std::holds_alternative<Negate>(op)) return an.negated();
  return an.mirrored_copy();
}

std::string to_record(const Potential& V) {
  std::ostringstream os;
  if (const auto* pw = std::get_if<PiecewiseConstantPotential>(&V)) {
    os << "kind = piecewise\n";
    os << "breakpoints = " << join(pw->breakpoints()) << "\n";
    os << "values = " << join(pw->values()) << "\n";
    return os.str();
  }
  const auto& an = std::get<AnalyticPotential>(V);
  os << "kind = analytic\n";
  os << "name = " << an.name() << "\n";
  os << "params = " << join(an.params()) << "\n";
  os << "sign = " << format_double(an.sign()) << "\n";
  os << "shift = " << format_double(an.shift()) << "\n";
  os << "mirrored = " << (an.mirrored() ? 1 : 0) << "\n";
  return os.str();
}

Potential from_record(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected key = value");
    fields[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  auto get = [&](const char* key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return it->second;
  };
  const std::string& kind = get("kind");
  if (kind == "piecewise") {
    return PiecewiseConstantPotential(parse_list(get("breakpoints")), parse_list(get("values")));
  }
  if (kind == "analytic") {
    AnalyticPotential an = named_analytic(get("name"), parse_list(fields["params"]));
    if (fields.contains("mirrored") && parse_double(fields["mirrored"]) != 0.0) an = an.mirrored_copy();
    if (fields.contains("shift")) an = an.translated(parse_double(fields["shift"]) - an.shift());
    if (fields.contains("sign") && parse_double(fields["sign"]) < 0.0) an = an.negated();
    return an;
  }
  throw Error(ErrorCode::ParseError, "unknown kind '" + kind + "'");
}

Potential parse_potential_spec(std::string_view spec) {
  spec = trim(spec);
  std::vector<std::string_view> parts;
  if (spec.starts_with("w:")) {
    const std::size_t open = spec.find('[');
    const std::size_t close = spec.find(']');
    if (open != 2 || close == std::string_view::npos || close + 1 >= spec.size() || spec[close + 1] != ':') {
      throw Error(ErrorCode::ParseError, "expected w:[a0,a1,...]:v1,v2,...");
    }
    return build_w(parse_list(spec.substr(open + 1, close - open - 1)), parse_list(spec.substr(close + 2)));
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? spec.npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view head = parts.front();
  auto arg = [&](std::size_t i) { return parse_double(parts.at(i)); };
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw Error(ErrorCode::ParseError, "'" + std::string(head) + "' takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (head == "v1") {
    want(0);
    return catalog::v1();
  }
  if (head == "v2") {
    want(1);
    return catalog::v2(arg(1));
  }
  if (head == "v3") {
    want(2);
    return catalog::v3(arg(1), arg(2));
  }
  if (head == "v4") {
    want(1);
    return catalog::v4(arg(1));
  }
  std::vector<double> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(arg(i));
  return named_analytic(head, params);
}

namespace catalog {

PiecewiseConstantPotential v1() { return build_w({-1.0, 1.0}, {1.0}); }

PiecewiseConstantPotential v2(double g) {
  return build_w({-1.0 - g / 2.0, -g / 2.0, g / 2.0, g / 2.0 + 1.0}, {-1.0, 0.0, 1.0});
}

PiecewiseConstantPotential v3(double g, double b) { return build_w({-g - 1.0, -g, 0.0, b}, {-1.0, 0.0, 1.0}); }

PiecewiseConstantPotential v4(double g) {
  return build_w({-g - 2.0, -g - 1.0, -1.0, 1.0, g + 1.0, g + 2.0}, {-1.0, 0.0, 1.0, 0.0, -1.0});
}

}  // namespace catalog

}  // namespace zeromode
