#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "zeromode/asymptotics.hpp"
#include "zeromode/error.hpp"
#include "zeromode/trigzeros.hpp"

using namespace zeromode;
using doctest::Approx;

constexpr double pi = std::numbers::pi;

TEST_CASE("nu runs monotonically from 1 to beta") {
  for (double beta : {1.5, std::numbers::sqrt2 * 1.2, 3.0, 7.25}) {
    const double lo = 1.0 / beta;
    CHECK(nu(lo * (1 + 1e-12), beta) == Approx(1.0).epsilon(1e-5));
    CHECK(nu(1.0 - 1e-13, beta) == Approx(beta).epsilon(1e-5));
    double prev = 1.0;
    for (int i = 1; i < 200; ++i) {
      const double a = lo + (1.0 - lo) * i / 200.0;
      const double v = nu(a, beta);
      CHECK(v > prev);
      CHECK(v < beta);
      prev = v;
    }
  }
}

TEST_CASE("nu domain") {
  CHECK_THROWS_AS(nu(0.5, 1.5), Error);
  CHECK_THROWS_AS(nu(1.0, 3.0), Error);
  CHECK_THROWS_AS(nu(0.0, 3.0), Error);
  try {
    nu(0.2, 2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
}

TEST_CASE("parity normalisation") {
  const auto a = parity_normalize(3, 1);
  CHECK(a.p_beta == 3);
  CHECK(a.q_beta == 1);
  const auto b = parity_normalize(3, 2);
  CHECK(b.p_beta == 6);
  CHECK(b.q_beta == 4);
  const auto c = parity_normalize(2, 1);
  CHECK(c.p_beta == 4);
  CHECK(c.q_beta == 2);
  CHECK_THROWS_AS(parity_normalize(4, 2), Error);
  CHECK_THROWS_AS(parity_normalize(0, 1), Error);
}

TEST_CASE("rational detection") {
  const auto r = detect_rational(3.0);
  REQUIRE(r);
  CHECK(r->p == 3);
  CHECK(r->q == 1);
  const auto s = detect_rational(22.0 / 7.0);
  REQUIRE(s);
  CHECK(s->p == 22);
  CHECK(s->q == 7);
  CHECK(!detect_rational(std::numbers::sqrt2 * 1.2));
  CHECK(!detect_rational(std::sqrt(3.0)));
  CHECK(!detect_rational(pi));
}

TEST_CASE("A density branches") {
  CHECK(a_density(0.3, 2.0).branch == ABranch::SubCritical);
  CHECK(a_density(0.3, 2.0).A == 1.0);
  const auto irr = a_density(0.9, std::sqrt(3.0));
  CHECK(irr.branch == ABranch::IrrationalSuper);
  CHECK(irr.A == Approx(nu(0.9, std::sqrt(3.0))));
  const auto rat = a_density(0.9, 3.0);
  CHECK(rat.branch == ABranch::RationalSuper);
  REQUIRE(rat.normalized);
  CHECK(rat.normalized->p_beta == 3);
  CHECK_THROWS_AS(a_density(0.5, 2.0), Error);
  try {
    a_density(0.5, 2.0 + 1e-11);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CriticalProduct);
  }
}

TEST_CASE("rational A is sandwiched between nu - 2/q and nu + 2/q") {
  for (long q = 1; q <= 7; ++q) {
    for (long p = q + 1; p <= 4 * q + 3; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const double beta = double(p) / double(q);
      for (double alpha = 1.0 / beta + 0.013; alpha < 1.0; alpha += 0.071) {
        const auto a = a_density(alpha, beta, Rational{p, q});
        const double qb = double(a.normalized->q_beta);
        const double n = nu(alpha, beta);
        CHECK(a.A >= n - 2.0 / qb - 1e-12);
        CHECK(a.A <= n + 2.0 / qb + 1e-12);
      }
    }
  }
}

TEST_CASE("rational A agrees with the angle-counting density") {
  // Two independent constructions of the same limit density.
  struct Case {
    long p, q;
    double alpha;
  };
  for (const Case c : {Case{3, 1, 0.9}, Case{3, 1, 0.5}, Case{5, 2, 0.7}, Case{7, 3, 0.95}, Case{2, 1, 0.8},
                       Case{11, 4, 0.6}}) {
    const double beta = double(c.p) / double(c.q);
    const auto a = a_density(c.alpha, beta, Rational{c.p, c.q});
    if (a.degenerate) continue;
    CHECK(rational_density(c.p, c.q, c.alpha) == Approx(a.A / pi).epsilon(1e-12));
  }
}

TEST_CASE("convergents of an irrational approach its A") {
  // As p/q -> beta the rational branch approaches nu, within 2/q_beta.
  const double beta = std::numbers::sqrt2;
  const double alpha = 0.9;
  const long conv[][2] = {{7, 5}, {17, 12}, {41, 29}, {99, 70}, {239, 169}};
  const double target = nu(alpha, beta);
  for (const auto& pq : conv) {
    const auto a = a_density(alpha, double(pq[0]) / double(pq[1]), Rational{pq[0], pq[1]});
    CHECK(std::abs(a.A - nu(alpha, double(pq[0]) / double(pq[1]))) <= 2.0 / double(a.normalized->q_beta) + 1e-12);
    CHECK(std::abs(a.A - target) < 2.0 / double(a.normalized->q_beta) + 0.01);
  }
}

TEST_CASE("predict routes every worked example") {
  CHECK(predict(catalog::v1(), 1.0).theorem == Theorem::SingleSign);
  CHECK(predict(catalog::v1(), 1.0).slope == Approx(2.0 / pi));
  CHECK(predict(catalog::v2(1.0), 1.0).theorem == Theorem::AntisymmetricEmpty);
  CHECK(predict(catalog::v3(0, 2), 1.0).theorem == Theorem::NoGap);
  CHECK(predict(catalog::v3(0, 2), 1.0).slope == Approx(1.0 / pi));
  const auto one = predict(catalog::v3(1, 2), 1.0);
  CHECK(one.theorem == Theorem::OneGap);
  CHECK(one.case_info == ABranch::RationalSuper);
  CHECK(one.slope * pi == Approx(a_density(std::tanh(1.0), 3.0).A));
  CHECK(predict(catalog::v4(1.0), 1.0).theorem == Theorem::UpperBoundOnly);
  CHECK(predict(catalog::v3(1, 1), 1.0).theorem == Theorem::AntisymmetricEmpty);
  CHECK(predict(build_w({0, 1, 2, 3}, {1, 0, -1.0}), 1.0).theorem == Theorem::AntisymmetricEmpty);
  CHECK(predict(build_w({0, 1, 2, 4}, {1, 0, -0.5}), 1.0).theorem == Theorem::ZeroIntegralFinite);
  CHECK(predict(hrp_potential(), 1.0).theorem == Theorem::SingleSign);
  CHECK(predict(hrp_potential(), 1.0).slope == Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(predict(catalog::v1(), 0.0), Error);
}

TEST_CASE("predicted slope lies between the general bounds") {
  const std::vector<Potential> pots{catalog::v1(), catalog::v3(0, 2), catalog::v3(1, 2), catalog::v3(2, 0.5),
                                    catalog::v4(1.0), build_w({0, 1, 1.5, 3}, {2, 0, -0.5})};
  for (const auto& V : pots) {
    for (double k : {0.5, 1.0, 2.0}) {
      const auto p = predict(V, k);
      CHECK(p.slope >= p.lower_slope - 1e-12);
      CHECK(p.slope <= p.upper_slope + 1e-12);
    }
  }
}

TEST_CASE("compare fits the counting slope") {
  const auto V = catalog::v1();
  const auto s = real_spectrum(V, 1.0, 200.0);
  const auto rep = compare(s, predict(V, 1.0), 200.0);
  CHECK(rep.relative_gap < 0.03);
  CHECK(rep.roots_used == s.roots.size());

  const auto h = real_spectrum(hrp_potential(), 1.0, 20.0);
  CHECK(compare(h, predict(hrp_potential(), 1.0), 20.0).empirical_slope == Approx(1.0).epsilon(0.01));

  const auto empty = real_spectrum(catalog::v2(1.0), 1.0, 20.0);
  const auto e = compare(empty, predict(catalog::v2(1.0), 1.0), 20.0);
  CHECK(e.roots_used == 0);
  CHECK(e.relative_gap == 0.0);

  const auto few = real_spectrum(V, 1.0, 5.0);
  CHECK_THROWS_AS(compare(few, predict(V, 1.0), 5.0), Error);
  CHECK_THROWS_AS(compare(few, predict(V, 1.0), 6.0), Error);
}

TEST_CASE("comparison json") {
  const auto V = catalog::v3(1, 2);
  const auto p = predict(V, 1.0);
  const auto j = nlohmann::json::parse(to_json(compare(real_spectrum(V, 1.0, 20.0), p, 20.0), p));
  CHECK(j.at("theorem") == "OneGap");
  CHECK(j.at("case") == "RationalSuper");
  CHECK(j.at("predicted_slope").get<double>() == p.slope);
  CHECK(j.contains("empirical_slope"));
}

TEST_CASE("synthesised potentials realise the requested density") {
  const auto V = synthesize_one_gap(1.0, 2.0, 4.0, 1.0);
  const auto s = real_spectrum(V, 1.0, 120.0);
  const auto rep = compare(s, predict(V, 1.0), 120.0);
  CHECK(rep.empirical_slope * pi == Approx(2.0).epsilon(0.05));
}
