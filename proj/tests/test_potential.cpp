#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zeromode/asymptotics.hpp"
#include "zeromode/error.hpp"
#include "zeromode/potential.hpp"

using namespace zeromode;
using doctest::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no zeromode::Error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("W evaluates piecewise with right limits") {
  const auto V = build_w({-1.0, 0.0, 2.0}, {3.0, -1.0});
  CHECK(V(-1.5) == 0.0);
  CHECK(V(-1.0) == 3.0);
  CHECK(V(-0.5) == 3.0);
  CHECK(V(0.0) == -1.0);
  CHECK(V(1.9) == -1.0);
  CHECK(V(2.0) == 0.0);
  CHECK(V.piece_count() == 2);
}

TEST_CASE("construction errors") {
  CHECK(code_of([] { build_w({0.0, -1.0}, {1.0}); }) == ErrorCode::NonMonotoneBreakpoints);
  CHECK(code_of([] { build_w({0.0, 1.0, 2.0}, {1.0}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { build_w({0.0}, {}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { build_w({1.0, 1.0}, {1.0}); }) == ErrorCode::NonMonotoneBreakpoints);
}

TEST_CASE("zero-length pieces are merged") {
  const auto V = catalog::v3(0.0, 2.0);  // [-1, 0, 0, 2]
  CHECK(V.piece_count() == 2);
  CHECK(V == build_w({-1.0, 0.0, 2.0}, {-1.0, 1.0}));
  CHECK(catalog::v2(0.0).piece_count() == 2);
}

TEST_CASE("norms and integrals of the worked examples") {
  CHECK(l1_norm(catalog::v1()) == Approx(2.0));
  CHECK(integral(catalog::v1()) == Approx(2.0));
  for (double g : {0.0, 1.0, 2.5}) {
    for (double b : {0.5, 2.0, 3.0}) {
      const auto V = catalog::v3(g, b);
      CHECK(integral(V) == Approx(b - 1.0));
      CHECK(l1_norm(V) == Approx(b + 1.0));
    }
    CHECK(integral(catalog::v4(g)) == Approx(0.0));
    CHECK(l1_norm(catalog::v4(g)) == Approx(4.0));
    CHECK(integral(catalog::v2(g)) == Approx(0.0));
  }
  // Integral of sech over the line is pi.
  CHECK(l1_norm(hrp_potential()) == Approx(std::numbers::pi).epsilon(1e-9));
  CHECK(integral(hrp_potential()) == Approx(-std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("gap classification") {
  CHECK(classify_gaps(catalog::v1()).kind == GapKind::NoGap);
  CHECK(classify_gaps(catalog::v3(0, 2)).kind == GapKind::NoGap);
  const auto one = classify_gaps(catalog::v3(1, 2));
  CHECK(one.kind == GapKind::OneGap);
  REQUIRE(one.components.size() == 2);
  CHECK(one.components[0].integral == Approx(-1.0));
  CHECK(one.components[1].integral == Approx(2.0));
  CHECK(classify_gaps(catalog::v4(1.0)).kind == GapKind::MultiGap);
  CHECK(classify_gaps(catalog::v4(1.0)).gap_count == 2);
  // Leading and trailing zero pieces are not gaps.
  CHECK(classify_gaps(build_w({-3, -1, 1, 4}, {0, 1, 0})).kind == GapKind::NoGap);
  CHECK(code_of([] { classify_gaps(build_w({0, 1}, {0})); }) == ErrorCode::TrivialPotential);
}

TEST_CASE("one-gap parameters") {
  const auto p = one_gap_params(catalog::v3(1, 2), 1.0);
  CHECK(p.alpha == Approx(std::tanh(1.0)));
  CHECK(p.beta == Approx(3.0));
  CHECK(p.gap_length == Approx(1.0));
  CHECK(one_gap_params(catalog::v3(1, 2), 2.0).alpha == Approx(std::tanh(2.0)));
  CHECK(code_of([] { one_gap_params(catalog::v1(), 1.0); }) == ErrorCode::NotOneGap);
  CHECK(code_of([] { one_gap_params(catalog::v3(1, 2), 0.0); }) == ErrorCode::NonPositiveK);
  CHECK(code_of([] { one_gap_params(catalog::v3(1, 1), 1.0); }) == ErrorCode::ZeroIntegral);
}

TEST_CASE("sign structure") {
  CHECK(is_single_signed(catalog::v1()));
  CHECK(!is_single_signed(catalog::v2(1)));
  for (double g : {0.0, 0.5, 1.0}) CHECK(is_antisymmetric(catalog::v2(g)));
  CHECK(!is_antisymmetric(catalog::v1()));
  CHECK(!is_antisymmetric(catalog::v3(1, 2)));
  CHECK(is_antisymmetric(catalog::v3(1, 1)));
  CHECK(!is_antisymmetric(catalog::v4(1)));
}

TEST_CASE("one-gap synthesis hits the requested invariants") {
  struct Case {
    double v, A, u, k;
  };
  for (const Case c : {Case{1, 2, 4, 1}, Case{0.5, 1.2, 3, 2}, Case{2, 2.5, 3, 0.7}}) {
    const auto V = synthesize_one_gap(c.v, c.A, c.u, c.k);
    CHECK(integral(V) == Approx(c.v).epsilon(1e-12));
    CHECK(l1_norm(V) == Approx(c.u).epsilon(1e-12));
    const auto p = one_gap_params(V, c.k);
    CHECK(p.alpha * p.beta > 1.0);
    CHECK(nu(p.alpha, p.beta) == Approx(c.A / c.v).epsilon(1e-10));
    // The slope of the counting function is A / pi.
    CHECK(predict(V, c.k).slope * std::numbers::pi == Approx(c.A).epsilon(1e-9));
  }
  CHECK(code_of([] { synthesize_one_gap(1, 0.5, 4, 1); }) == ErrorCode::InfeasibleTriple);
  CHECK(code_of([] { synthesize_one_gap(1, 4, 4, 1); }) == ErrorCode::InfeasibleTriple);
}

TEST_CASE("transforms") {
  const auto V = catalog::v3(1, 2);
  const auto t = transform(V, Translate{2.5});
  CHECK(t.left() == Approx(V.left() + 2.5));
  CHECK(t(1.0) == V(-1.5));
  const auto n = transform(V, Negate{});
  CHECK(n(1.0) == -V(1.0));
  const auto m = transform(V, Mirror{});
  for (double x : {-1.7, -0.3, 0.4, 1.9}) CHECK(m(x) == V(-x));
  CHECK(transform(m, Mirror{}) == V);

  const Potential h = hrp_potential();
  const Potential ht = transform(h, Translate{1.0});
  CHECK(evaluate(ht, 1.3) == Approx(evaluate(h, 0.3)));
  CHECK(evaluate(transform(h, Negate{}), 0.2) == Approx(-evaluate(h, 0.2)));
}

TEST_CASE("records round-trip bit-exactly") {
  const auto V = build_w({-0.1, 1.0 / 3.0, std::numbers::pi}, {1e-300, -2.0 / 7.0});
  const Potential back = from_record(to_record(V));
  CHECK(std::get<PiecewiseConstantPotential>(back) == V);

  const Potential h = transform(transform(hrp_potential(), Translate{0.25}), Mirror{});
  const Potential hb = from_record(to_record(h));
  const auto& an = std::get<AnalyticPotential>(hb);
  CHECK(an.name() == "hrp");
  for (double x : {-2.0, 0.1, 3.0}) CHECK(evaluate(hb, x) == evaluate(h, x));

  CHECK(code_of([] { from_record("kind = teapot\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { from_record("kind = piecewise\nbreakpoints = 0, 1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("potential mini-language") {
  CHECK(std::get<PiecewiseConstantPotential>(parse_potential_spec("w:[-1,1]:1")) == catalog::v1());
  CHECK(std::get<PiecewiseConstantPotential>(parse_potential_spec("v3:1:2")) == catalog::v3(1, 2));
  CHECK(std::get<PiecewiseConstantPotential>(parse_potential_spec("v4:0.5")) == catalog::v4(0.5));
  CHECK(std::holds_alternative<AnalyticPotential>(parse_potential_spec("hrp")));
  CHECK(code_of([] { parse_potential_spec("w:[0,1]"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_potential_spec("v3:1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_potential_spec("w:[0,x]:1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_potential_spec("w:[1,0]:1"); }) == ErrorCode::NonMonotoneBreakpoints);
}
