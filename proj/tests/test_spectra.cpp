#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "zeromode/closedform.hpp"
#include "zeromode/error.hpp"
#include "zeromode/spectra.hpp"

using namespace zeromode;
using doctest::Approx;

namespace {

std::vector<double> values(const GammaSpectrum& s) {
  std::vector<double> out;
  for (const auto& r : s.roots) out.push_back(r.value.real());
  return out;
}

}  // namespace

TEST_CASE("V1 real spectrum against bisection on the printed formula") {
  const auto s = real_spectrum(catalog::v1(), 1.0, 30.0);
  const auto ref = oracle::bisection_roots([](double g) { return oracle::v1_printed(g); }, 1.0 + 1e-9, 30.0, 0.01);
  // gamma <= 1: printed formula is singular at 1; the first root is above it.
  const auto got = values(s);
  REQUIRE(got.size() == ref.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Approx(ref[i]).epsilon(1e-9));
  REQUIRE(s.cross_check_gap.has_value());
  CHECK(*s.cross_check_gap < 1e-8);
  for (const auto& r : s.roots) {
    CHECK(r.method == RootMethod::DeltaBisect);
    CHECK(r.value.imag() == 0.0);
  }
}

TEST_CASE("empty spectra") {
  CHECK(real_spectrum(catalog::v2(0.0), 1.0, 40.0).roots.empty());
  CHECK(real_spectrum(catalog::v2(1.0), 1.0, 40.0).roots.empty());
  CHECK(real_spectrum(build_w({0, 1}, {0}), 1.0, 10.0).roots.empty());
}

TEST_CASE("counting function") {
  const auto s = real_spectrum(hrp_potential(), 1.0, 10.4);
  CHECK(counting_function(s, 10.4) == 9);
  CHECK(counting_function(s, 5.0) == 4);
  CHECK_THROWS_AS(counting_function(s, 11.0), Error);

  const auto v1 = real_spectrum(catalog::v1(), 1.0, 100.0);
  const double expected = 100.0 * 2.0 / std::numbers::pi;
  CHECK(std::abs(double(counting_function(v1, 100.0)) - expected) <= 2.0);
}

TEST_CASE("the gamma spectrum is symmetric under negation") {
  // D(-gamma) for V equals D(gamma) for -V up to the left/right swap; check via
  // roots of the negated potential and negative real scan of the determinant.
  for (const auto& V : {catalog::v1(), catalog::v3(1, 2), catalog::v4(1.0)}) {
    const auto pos = values(real_spectrum(V, 1.0, 12.0));
    const auto neg = values(real_spectrum(transform(V, Negate{}), 1.0, 12.0));
    REQUIRE(pos.size() == neg.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      CHECK(pos[i] == Approx(neg[i]).epsilon(1e-9));
      CHECK(std::abs(determinant(V, -pos[i], 1.0)) < 1e-6 * (1.0 + std::abs(determinant(V, -pos[i] + 0.1, 1.0))));
    }
  }
}

TEST_CASE("complex roots are closed under conjugation") {
  const auto V = catalog::v2(1.0);
  const auto up = complex_spectrum(V, 1.0, {2.0, 12.0, 0.05, 1.5});
  const auto down = complex_spectrum(V, 1.0, {2.0, 12.0, -1.5, -0.05});
  REQUIRE(up.roots.size() == down.roots.size());
  REQUIRE(!up.roots.empty());
  for (const auto& r : up.roots) {
    bool found = false;
    for (const auto& s : down.roots) found |= std::abs(s.value - std::conj(r.value)) < 1e-8;
    CHECK(found);
  }
}

TEST_CASE("complex roots match Newton on the printed V2 formula") {
  const auto s = complex_spectrum(catalog::v2(1.0), 1.0, {5.0, 15.0, 0.05, 1.5});
  REQUIRE(!s.roots.empty());
  for (const auto& r : s.roots) {
    CHECK(r.method == RootMethod::WindingNewton);
    // Independent Newton iteration on the printed closed form.
    oracle::cplx z = r.value + oracle::cplx{1e-4, -1e-4};
    for (int it = 0; it < 50; ++it) {
      const double h = 1e-7;
      const auto f = oracle::v2_printed(z, 1.0);
      const auto df = (oracle::v2_printed(z + h, 1.0) - oracle::v2_printed(z - h, 1.0)) / (2 * h);
      z -= f / df;
    }
    CHECK(std::abs(z - r.value) < 1e-7);
  }
}

TEST_CASE("V1 has no roots off the real axis") {
  CHECK(complex_spectrum(catalog::v1(), 1.0, {0.5, 20.0, 0.2, 3.0}).roots.empty());
  CHECK(winding_number(catalog::v1(), 1.0, {0.5, 20.0, -0.5, 0.5}) ==
        int(real_spectrum(catalog::v1(), 1.0, 20.0).roots.size() -
            real_spectrum(catalog::v1(), 1.0, 0.5).roots.size()));
}

TEST_CASE("phase grid") {
  const auto V = catalog::v2(0.0);
  const auto g = phase_grid(V, 1.0, {0.5, 10.0, -2.0, 2.0}, 40, 20, 2);
  REQUIRE(g.arg_values.size() == 800);
  // Conjugate symmetry: arg D(conj z) = -arg D(z).
  for (std::size_t iy = 0; iy < 10; ++iy) {
    for (std::size_t ix = 0; ix < 40; ix += 7) {
      const double a = g.at(ix, iy), b = g.at(ix, 19 - iy);
      CHECK(std::abs(std::remainder(a + b, 2 * std::numbers::pi)) < 1e-9);
    }
  }
  const auto ppm = to_ppm(g);
  CHECK(ppm.rfind("P6\n40 20\n255\n", 0) == 0);
  CHECK(ppm.size() == std::string("P6\n40 20\n255\n").size() + 3 * 800);
  CHECK(to_csv(g).rfind("re,im,arg\n", 0) == 0);

  CHECK_THROWS_AS(phase_grid(V, 1.0, {0, 1, 0, 0}, 10, 10), Error);
  CHECK_THROWS_AS(phase_grid(V, 1.0, {0, 1, 0, 1}, 1, 10), Error);
  CHECK_THROWS_AS(phase_grid(V, 0.0, {0, 1, 0, 1}, 10, 10), Error);
}

TEST_CASE("results do not depend on the thread count") {
  RealSpectrumOptions one, four;
  four.threads = 4;
  const auto a = to_json_lines(real_spectrum(catalog::v4(1.0), 1.0, 25.0, one));
  const auto b = to_json_lines(real_spectrum(catalog::v4(1.0), 1.0, 25.0, four));
  CHECK(a == b);
  ComplexSpectrumOptions c1, c3;
  c3.threads = 3;
  const Rectangle rect{2.0, 10.0, 0.05, 1.5};
  CHECK(to_json_lines(complex_spectrum(catalog::v2(1.0), 1.0, rect, c1)) ==
        to_json_lines(complex_spectrum(catalog::v2(1.0), 1.0, rect, c3)));
}

TEST_CASE("json lines parse") {
  const auto s = real_spectrum(catalog::v1(), 1.0, 6.0);
  std::istringstream in(to_json_lines(s));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("re").get<double>() == s.roots[n].value.real());
    CHECK(j.at("im").get<double>() == 0.0);
    CHECK(j.at("method") == "DeltaBisect");
    ++n;
  }
  CHECK(n == s.roots.size());
}

TEST_CASE("spectrum is invariant under translation and mirroring") {
  const auto V = catalog::v3(1, 2);
  const auto base = values(real_spectrum(V, 1.0, 15.0));
  for (const auto& W : {transform(V, Translate{-4.2}), transform(V, Mirror{})}) {
    const auto other = values(real_spectrum(W, 1.0, 15.0));
    REQUIRE(other.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(other[i] == Approx(base[i]).epsilon(1e-9));
  }
}
