#include "commands.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeromode/asymptotics.hpp"
#include "zeromode/closedform.hpp"
#include "zeromode/error.hpp"
#include "zeromode/potential.hpp"
#include "zeromode/prufer.hpp"
#include "zeromode/spectra.hpp"
#include "zeromode/trigzeros.hpp"

namespace zeromode::cli {

namespace {

constexpr double kPi = std::numbers::pi;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumConfig {
  std::string potential;
  double k = 0.0;
  double R = 0.0;
  std::vector<double> rect;
  double tol = 1e-10;
  unsigned threads = 1;
  std::string output;
};

struct CompareConfig {
  std::string potential;
  double k = 0.0;
  double R = 0.0;
  double tol = 1e-10;
  unsigned threads = 1;
  std::string trace;
  std::string output;
};

struct PhaseConfig {
  std::string potential;
  double k = 0.0;
  std::vector<double> rect;
  std::size_t nx = 400;
  std::size_t ny = 200;
  unsigned threads = 1;
  std::string ppm = "phase.ppm";
  std::string csv;
};

struct TrigConfig {
  double alpha = 0.0;
  double beta = 0.0;
  double R = 0.0;
  double step = 0.0;
  std::vector<long> rational;
  unsigned threads = 1;
  std::string trace;
};

struct DeltaConfig {
  std::string potential;
  double k = 0.0;
  double from = 0.0;
  double to = 0.0;
  std::size_t n = 201;
  unsigned threads = 1;
  std::string output;
};

struct ReproduceConfig {
  std::string example;
  std::string out_dir;
  unsigned threads = 1;
};

Rectangle to_rectangle(const std::vector<double>& v) {
  if (v.size() != 4) throw UsageError("--rect needs re_min,re_max,im_min,im_max");
  const Rectangle r{v[0], v[1], v[2], v[3]};
  if (!(r.width() > 0.0) || !(r.height() > 0.0)) throw UsageError("--rect must have positive width and height");
  return r;
}

PiecewiseConstantPotential piecewise(const Potential& V) {
  const auto* pw = std::get_if<PiecewiseConstantPotential>(&V);
  if (pw == nullptr) throw UsageError("this command needs a piecewise-constant potential");
  return *pw;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << content;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

std::vector<double> radii_grid(double R, std::size_t n) {
  std::vector<double> radii;
  for (std::size_t i = 1; i <= n; ++i) radii.push_back(R * static_cast<double>(i) / static_cast<double>(n));
  return radii;
}

std::string counting_trace_csv(const GammaSpectrum& s, double R, std::size_t n) {
  std::string csv = "R,count,density\n";
  for (double r : radii_grid(R, n)) {
    const auto c = counting_function(s, r);
    csv += format_double(r) + "," + std::to_string(c) + "," + format_double(static_cast<double>(c) / r) + "\n";
  }
  return csv;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const SpectrumConfig& c, std::ostream& out) {
  const Potential V = parse_potential_spec(c.potential);
  if (!c.rect.empty()) {
    ComplexSpectrumOptions opts;
    opts.tol = c.tol;
    opts.threads = c.threads;
    const auto s = complex_spectrum(piecewise(V), c.k, to_rectangle(c.rect), opts);
    emit(c.output, to_json_lines(s), out);
    return 0;
  }
  if (!(c.R > 0.0)) throw UsageError("spectrum needs --R or --rect");
  RealSpectrumOptions opts;
  opts.tol = c.tol;
  opts.threads = c.threads;
  emit(c.output, to_json_lines(real_spectrum(V, c.k, c.R, opts)), out);
  return 0;
}

std::string compare_json(const Potential& V, double k, const GammaSpectrum& s, double R) {
  const DensityPrediction p = predict(V, k);
  try {
    return to_json(compare(s, p, R), p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientRoots) throw;
    // Too few roots for a slope fit: report the finite count instead.
    nlohmann::ordered_json j;
    j["empirical_slope"] = nullptr;
    j["predicted_slope"] = p.slope;
    j["roots_used"] = counting_function(s, R);
    j["R"] = R;
    j["theorem"] = std::string(to_string(p.theorem));
    j["lower_slope"] = p.lower_slope;
    j["upper_slope"] = p.upper_slope;
    j["finite_count"] = true;
    return j.dump();
  }
}

int cmd_count_compare(const CompareConfig& c, std::ostream& out) {
  const Potential V = parse_potential_spec(c.potential);
  RealSpectrumOptions opts;
  opts.tol = c.tol;
  opts.threads = c.threads;
  const GammaSpectrum s = real_spectrum(V, c.k, c.R, opts);
  emit(c.output, compare_json(V, c.k, s, c.R) + "\n", out);
  if (!c.trace.empty()) write_file(c.trace, counting_trace_csv(s, c.R, 300));
  return 0;
}

int cmd_phaseplot(const PhaseConfig& c, std::ostream& out) {
  const PiecewiseConstantPotential V = piecewise(parse_potential_spec(c.potential));
  const PhaseGrid g = phase_grid(V, c.k, to_rectangle(c.rect), c.nx, c.ny, c.threads);
  write_file(c.ppm, to_ppm(g));
  if (!c.csv.empty()) write_file(c.csv, to_csv(g));
  out << "wrote " << c.ppm << (c.csv.empty() ? "" : " and " + c.csv) << "\n";
  return 0;
}

int cmd_trig(const TrigConfig& c, std::ostream& out) {
  const TrigParams params{c.alpha, c.beta, std::nullopt};
  const double step = c.step > 0.0 ? c.step : max_grid_step(c.beta);
  const ZeroCount z = brute_count(params, c.R, step, c.threads);

  nlohmann::ordered_json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["R"] = c.R;
  j["count"] = z.count();
  j["tangential"] = z.tangential_count();
  j["density"] = static_cast<double>(z.count()) / c.R;
  std::optional<Rational> hint;
  if (!c.rational.empty()) {
    if (c.rational.size() != 2) throw UsageError("--rational needs p,q");
    hint = Rational{c.rational[0], c.rational[1]};
  }
  if (c.alpha > 0.0) {
    const ADensity a = a_density(c.alpha, c.beta, hint);
    j["predicted_density"] = a.A / kPi;
    j["branch"] = std::string(to_string(a.branch));
    j["degenerate"] = a.degenerate;
  } else {
    j["predicted_density"] = 1.0 / kPi;
  }
  out << j.dump() << "\n";
  if (!c.trace.empty()) write_file(c.trace, count_trace_csv(z, radii_grid(c.R, 200)));
  return 0;
}

int cmd_delta(const DeltaConfig& c, std::ostream& out) {
  if (c.n < 2) throw UsageError("--n must be at least 2");
  if (!(c.to > c.from)) throw UsageError("--to must exceed --from");
  const Potential V = parse_potential_spec(c.potential);
  std::vector<double> gammas(c.n);
  for (std::size_t i = 0; i < c.n; ++i) gammas[i] = c.from + (c.to - c.from) * i / (c.n - 1.0);
  emit(c.output, to_csv(delta_curve(V, c.k, gammas, c.threads)), out);
  return 0;
}

// ---------------------------------------------------------------------------
// Canned reproductions of the worked examples.

double printed_v1(double gamma) {
  const std::complex<double> t = std::sqrt(std::complex<double>(gamma * gamma - 1.0));
  return (2.0 * (t * std::cos(2.0 * t) + std::sin(2.0 * t))).real() / (gamma - 1.0);
}

std::string real_determinant_csv(const PiecewiseConstantPotential& V, double from, double to, std::size_t n,
                                 double (*printed)(double) = nullptr) {
  std::string csv = printed ? "gamma,D,printed\n" : "gamma,D\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double g = from + (to - from) * i / (n - 1.0);
    csv += format_double(g) + "," + format_double(determinant(V, g, 1.0).real());
    if (printed) csv += "," + format_double(printed(g));
    csv += "\n";
  }
  return csv;
}

std::vector<std::string> reproduce(const std::string& id, const fs::path& dir, unsigned threads) {
  static const std::set<std::string> known{"2.1", "2.2", "2.3", "2.4", "2.5"};
  if (!known.contains(id)) throw Error(ErrorCode::UnknownExample, "no worked example " + id);
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& content) {
    write_file((dir / name).string(), content);
    written.push_back((dir / name).string());
  };
  RealSpectrumOptions ropts;
  ropts.threads = threads;

  if (id == "2.1") {
    const auto V = catalog::v1();
    put("v1_spectrum.jsonl", to_json_lines(real_spectrum(V, 1.0, 50.0, ropts)));
    put("v1_determinant.csv", real_determinant_csv(V, 0.0, 20.0, 2001, printed_v1));
    const auto g = phase_grid(V, 1.0, {-20, 20, -4, 4}, 800, 160, threads);
    put("v1_phase.ppm", to_ppm(g));
    put("v1_phase.csv", to_csv(g));
  } else if (id == "2.2") {
    for (double gap : {0.0, 1.0}) {
      const auto V = catalog::v2(gap);
      const std::string tag = "v2_g" + format_double(gap);
      put(tag + "_determinant.csv", real_determinant_csv(V, 0.0, 20.0, 2001));
      const auto g = phase_grid(V, 1.0, {-20, 20, -4, 4}, 800, 160, threads);
      put(tag + "_phase.ppm", to_ppm(g));
      put(tag + "_phase.csv", to_csv(g));
      ComplexSpectrumOptions copts;
      copts.threads = threads;
      const auto s = complex_spectrum(V, 1.0, {0.5, 40, 0.01, 4}, copts);
      put(tag + "_complex.jsonl", to_json_lines(s));
      std::string overlay = "re,im,asymptote\n";
      for (const auto& r : s.roots) {
        const double re = r.value.real();
        const double curve = gap == 0.0 ? std::log(re) / 2.0 : std::asinh(1.0 / std::sinh(gap));
        overlay += format_double(re) + "," + format_double(r.value.imag()) + "," + format_double(curve) + "\n";
      }
      put(tag + "_asymptote.csv", overlay);
    }
  } else if (id == "2.3" || id == "2.4") {
    const std::vector<std::pair<std::string, Potential>> cases =
        id == "2.3" ? std::vector<std::pair<std::string, Potential>>{{"v3_g0_b2", catalog::v3(0, 2)},
                                                                     {"v3_g1_b2", catalog::v3(1, 2)}}
                    : std::vector<std::pair<std::string, Potential>>{{"v4_g0.5", catalog::v4(0.5)},
                                                                     {"v4_g1", catalog::v4(1.0)}};
    for (const auto& [tag, V] : cases) {
      const auto s = real_spectrum(V, 1.0, 150.0, ropts);
      put(tag + "_spectrum.jsonl", to_json_lines(s));
      put(tag + "_count.csv", counting_trace_csv(s, 150.0, 300));
      put(tag + "_compare.json", compare_json(V, 1.0, s, 150.0) + "\n");
    }
  } else if (id == "2.5") {
    const Potential V = hrp_potential();
    for (double k : {1.0, 1.5}) {
      const std::string tag = "hrp_k" + format_double(k);
      std::vector<double> gammas(1001);
      for (std::size_t i = 0; i < gammas.size(); ++i) gammas[i] = 10.0 * i / 1000.0;
      const auto curve = delta_curve(V, k, gammas, threads);
      std::string csv = "gamma,cos_delta\n";
      for (std::size_t i = 0; i < gammas.size(); ++i) {
        csv += format_double(gammas[i]) + "," + format_double(std::cos(curve.delta_values[i])) + "\n";
      }
      put(tag + "_cos_delta.csv", csv);
      put(tag + "_spectrum.jsonl", to_json_lines(real_spectrum(V, k, 10.0, ropts)));
    }
  } else {
    throw Error(ErrorCode::UnknownExample, "no example '" + id + "' (expected 2.1 ... 2.5)");
  }
  return written;
}

int cmd_reproduce(const ReproduceConfig& c, std::ostream& out) {
  const fs::path dir = c.out_dir.empty() ? fs::path("reproduce-" + c.example) : fs::path(c.out_dir);
  for (const auto& f : reproduce(c.example, dir, c.threads)) out << f << "\n";
  return 0;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  std::string out(s.substr(b, e - b + 1));
  if (out.size() >= 2 && (out.front() == '"' || out.front() == '\'') && out.back() == out.front()) {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

// Splices `--config FILE` into the argument list: every `key = value` line
// becomes `--key value` unless the flag was given explicitly.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin() + 1, args.end(),
                       [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
  };
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

template <class T>
CLI::Option* required(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option(name, target, help)->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gamma-spectra of one-dimensional Dirac pencils and related zero counts", "zeromode"};
  app.require_subcommand(1);

  SpectrumConfig sc;
  auto* spectrum = app.add_subcommand("spectrum", "real or complex points of Gamma(V), as JSON lines");
  required(spectrum, "--potential", sc.potential, "potential spec, e.g. w:[-1,1]:1, hrp, v2:1");
  required(spectrum, "--k", sc.k, "transverse wavenumber")->check(CLI::PositiveNumber);
  spectrum->add_option("--R", sc.R, "real search radius")->check(CLI::PositiveNumber);
  spectrum->add_option("--rect", sc.rect, "complex rectangle re_min,re_max,im_min,im_max")->delimiter(',');
  spectrum->add_option("--tol", sc.tol, "root tolerance")->check(CLI::PositiveNumber);
  spectrum->add_option("--threads", sc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  spectrum->add_option("--output", sc.output, "output path (default stdout)");

  CompareConfig cc;
  auto* compare_cmd = app.add_subcommand("count-compare", "empirical counting slope against the prediction");
  required(compare_cmd, "--potential", cc.potential, "potential spec");
  required(compare_cmd, "--k", cc.k, "transverse wavenumber")->check(CLI::PositiveNumber);
  required(compare_cmd, "--R", cc.R, "counting radius")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--tol", cc.tol, "root tolerance")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--threads", cc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  compare_cmd->add_option("--trace", cc.trace, "CSV path for the counting function");
  compare_cmd->add_option("--output", cc.output, "output path (default stdout)");

  PhaseConfig pc;
  auto* phase = app.add_subcommand("phaseplot", "phase plot of the matching determinant");
  required(phase, "--potential", pc.potential, "piecewise-constant potential spec");
  required(phase, "--k", pc.k, "transverse wavenumber")->check(CLI::PositiveNumber);
  required(phase, "--rect", pc.rect, "re_min,re_max,im_min,im_max")->delimiter(',');
  phase->add_option("--nx", pc.nx, "columns")->check(CLI::Range(std::size_t{2}, std::size_t{20000}));
  phase->add_option("--ny", pc.ny, "rows")->check(CLI::Range(std::size_t{2}, std::size_t{20000}));
  phase->add_option("--threads", pc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  phase->add_option("--ppm", pc.ppm, "pixmap path");
  phase->add_option("--csv", pc.csv, "CSV path for raw arg values");

  TrigConfig tc;
  auto* trig = app.add_subcommand("trig", "zeros of cos x + alpha cos(beta x) on [0, R]");
  required(trig, "--alpha", tc.alpha, "0 <= alpha < 1");
  required(trig, "--beta", tc.beta, "beta >= 0");
  required(trig, "--R", tc.R, "interval length")->check(CLI::PositiveNumber);
  trig->add_option("--step", tc.step, "scan step (default min(pi, pi/beta)/8)")->check(CLI::PositiveNumber);
  trig->add_option("--rational", tc.rational, "beta = p/q hint")->delimiter(',');
  trig->add_option("--threads", tc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  trig->add_option("--trace", tc.trace, "CSV path for the count trace");

  DeltaConfig dc;
  auto* delta = app.add_subcommand("delta", "Pruefer angle defect on a gamma grid, as CSV");
  required(delta, "--potential", dc.potential, "potential spec");
  required(delta, "--k", dc.k, "transverse wavenumber")->check(CLI::PositiveNumber);
  required(delta, "--from", dc.from, "first gamma");
  required(delta, "--to", dc.to, "last gamma");
  delta->add_option("--n", dc.n, "number of samples");
  delta->add_option("--threads", dc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  delta->add_option("--output", dc.output, "output path (default stdout)");

  ReproduceConfig rc;
  auto* repro = app.add_subcommand("reproduce", "regenerate the data behind a worked example");
  repro->add_option("example", rc.example, "2.1, 2.2, 2.3, 2.4 or 2.5")->required();
  repro->add_option("--out", rc.out_dir, "output directory (default reproduce-<id>)");
  repro->add_option("--threads", rc.threads, "worker threads")->check(CLI::Range(1u, 256u));

  std::string config_path;
  for (auto* sub : {spectrum, compare_cmd, phase, trig, delta, repro}) {
    sub->add_option("--config", config_path, "key = value file mirroring the flags (flags win)");
  }

  std::vector<std::string> args;
  try {
    args = merge_config(std::vector<std::string>(argv, argv + argc));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> merged;
  for (const auto& a : args) merged.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(merged.size()), merged.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*spectrum) return cmd_spectrum(sc, out);
    if (*compare_cmd) return cmd_count_compare(cc, out);
    if (*phase) return cmd_phaseplot(pc, out);
    if (*trig) return cmd_trig(tc, out);
    if (*delta) return cmd_delta(dc, out);
    if (*repro) return cmd_reproduce(rc, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.numerical() ? 3 : 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace zeromode::cli
