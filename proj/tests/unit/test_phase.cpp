#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscillab/errors.hpp"
#include "oscillab/phase.hpp"

using namespace oscillab;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2;
}

TEST_CASE("monomial derivatives") {
  const Phase p = Phase::monomial(5);
  for (double x : {-1.3, -0.2, 0.0, 0.7, 2.0}) {
    double coef = 1.0;
    for (int k = 0; k <= 6; ++k) {
      const double expected = k > 5 ? 0.0 : coef * std::pow(x, 5 - k);
      CHECK(p.eval(k, x) == doctest::Approx(expected).epsilon(1e-12));
      coef *= (5 - k);
    }
  }
}

TEST_CASE("analytic derivatives agree with centered differences") {
  const double h = Phase::kDifferenceStep;
  for (const Phase& p : {Phase::monomial(3), Phase::monomial(4), Phase::cosine()}) {
    for (int k = 1; k <= 5; ++k) {
      for (double x : {-0.4, 0.1, 0.35, 1.2}) {
        const double fd = (p.eval(k - 1, x + h) - p.eval(k - 1, x - h)) / (2 * h);
        const double exact = p.eval(k, x);
        CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("custom phase falls back to differences") {
  const Phase p = Phase::custom({[](double x) { return std::sin(x); },
                                 [](double x) { return std::cos(x); }});
  CHECK(p.max_analytic_order() == 1);
  CHECK(p.eval(2, 0.4) == doctest::Approx(-std::sin(0.4)).epsilon(1e-6));
  CHECK(p.eval(3, 0.4) == doctest::Approx(-std::cos(0.4)).epsilon(1e-4));
  CHECK_THROWS_AS(p.eval(4, 0.4), OrderUnavailable);
}

TEST_CASE("finite type examples") {
  SUBCASE("x^3 at 0, ell 3") {
    const auto r = validate_finite_type(Phase::monomial(3), {.x0 = 0.0, .ell = 3, .epsilon = 1.0});
    CHECK(r.pass);
    CHECK(r.leading == 6.0);
    REQUIRE(r.vanishing.size() == 1);
    CHECK(r.vanishing[0] == 0.0);
    CHECK(r.u == 1.0);
  }
  SUBCASE("cos at 0, ell 2") {
    const auto r = validate_finite_type(Phase::cosine(), {.x0 = 0.0, .ell = 2, .epsilon = 0.5});
    CHECK(r.pass);
    CHECK(r.leading == -1.0);
    CHECK(r.vanishing.empty());
  }
  SUBCASE("cos at pi/2, ell 3") {
    const auto r = validate_finite_type(Phase::cosine(), {.x0 = kHalfPi, .ell = 3, .epsilon = 0.5});
    CHECK(r.pass);
    CHECK(r.vanishing[0] <= 1e-15);
    CHECK(r.leading == doctest::Approx(1.0));
  }
  SUBCASE("x^3 at 0, ell 2 fails") {
    const auto r = validate_finite_type(Phase::monomial(3), {.x0 = 0.0, .ell = 2, .epsilon = 1.0});
    CHECK_FALSE(r.pass);
    CHECK(r.leading == 0.0);
    CHECK_THROWS_AS(r.require(), ValidationFailed);
  }
}

TEST_CASE("finite type gates") {
  CHECK_THROWS_AS(validate_finite_type(Phase::monomial(3), {.ell = 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate_finite_type(Phase::monomial(3), {.ell = 3}, 0.0), std::invalid_argument);
  const Phase shallow = Phase::custom({[](double x) { return x * x * x; }});
  CHECK_THROWS_AS(validate_finite_type(shallow, {.ell = 3}), OrderUnavailable);
  const auto r = validate_finite_type(Phase::monomial(3), {.ell = 3, .epsilon = 1.0, .u = 0.5});
  CHECK(r.pass);
  CHECK(r.u == 0.5);
}

TEST_CASE("support search halves until the leading derivative holds") {
  // phi''' = 6 + 24x on x^3 + x^4: drops below 3 at x = -1/8.
  const Phase p = Phase::monomial(3).plus_affine(0, 0);
  const Phase q = Phase::custom({[](double x) { return x * x * x + x * x * x * x; },
                                 [](double x) { return 3 * x * x + 4 * x * x * x; },
                                 [](double x) { return 6 * x + 12 * x * x; },
                                 [](double x) { return 6 + 24 * x; },
                                 [](double) { return 24.0; }});
  CHECK(resolve_support(p, {.ell = 3, .epsilon = 6.0}) == 1.0);
  CHECK(resolve_support(q, {.ell = 3, .epsilon = 6.0}) == 0.125);
}

TEST_CASE("translation covariance") {
  for (const auto& [phase, x0, ell] : {std::tuple{Phase::monomial(3), 0.0, 3},
                                       std::tuple{Phase::cosine(), kHalfPi, 3},
                                       std::tuple{Phase::cosine(), 0.0, 2}}) {
    const double a = kHalfPi;
    const auto base = validate_finite_type(phase, {.x0 = x0, .ell = ell, .epsilon = 0.5});
    const auto moved = validate_finite_type(phase.translated(a), {.x0 = x0 + a, .ell = ell, .epsilon = 0.5});
    CHECK(moved.leading == base.leading);
    CHECK(moved.vanishing == base.vanishing);
    CHECK(moved.pass == base.pass);
    CHECK(moved.u == base.u);
  }
}

TEST_CASE("affine transforms compose") {
  const Phase p = Phase::cosine().plus_affine(1.0, 2.0).translated(0.5).scaled(-3.0);
  for (double x : {-1.0, 0.2, 0.9}) {
    CHECK(p.eval(0, x) == doctest::Approx(-3.0 * (std::cos(x - 0.5) + 1.0 + 2.0 * (x - 0.5))));
    CHECK(p.eval(1, x) == doctest::Approx(-3.0 * (-std::sin(x - 0.5) + 2.0)));
    CHECK(p.eval(2, x) == doctest::Approx(3.0 * std::cos(x - 0.5)));
  }
  const Phase n = normalized(Phase::cosine(), {.x0 = kHalfPi, .ell = 3});
  CHECK(n.eval(0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(n.eval(1, 0.0)) <= 1e-15);
  CHECK(n.eval(0, 0.3) == doctest::Approx(0.3 - std::sin(0.3)).epsilon(1e-10));
}

TEST_CASE("derivative bounds") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0};
  CHECK(*derivative_bound(Phase::monomial(3), spec, 1) == doctest::Approx(3.0));
  CHECK(*derivative_bound(Phase::monomial(3), spec, 3) == 6.0);
  CHECK_FALSE(derivative_bound(Phase::monomial(3), spec, 6).has_value());
  const FiniteTypeSpec capped{.ell = 3, .epsilon = 1.0, .bounds = {0.0, 2.0}};
  CHECK(*derivative_bound(Phase::monomial(3), capped, 1) == 2.0);
}

TEST_CASE("comparability") {
  const FiniteTypeSpec cubic{.ell = 3, .epsilon = 1.0};
  const auto r1 = comparability_check(Phase::monomial(3), cubic, 1, 0.01);
  CHECK(r1.min_ratio == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r1.max_ratio == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r1.upper == 6.0);
  CHECK(r1.pass);
  for (int ell : {2, 3, 5}) {
    const auto r0 = comparability_check(Phase::monomial(ell), {.ell = ell}, 0, 0.01);
    CHECK(r0.min_ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r0.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(comparability_check(Phase::monomial(3), cubic, 3, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(comparability_check(Phase::monomial(3), {.ell = 3, .u = 0.01}, 1, 0.004),
                  DegenerateSupport);
}

TEST_CASE("comparability of the recentred cosine against tabulation") {
  // (phi - Taylor)' at pi/2 + t is 1 - cos t = 2 sin^2(t/2).
  const FiniteTypeSpec spec{.x0 = kHalfPi, .ell = 3, .epsilon = 1.0, .u = 0.3};
  const double h = 0.3 / 5000;
  const auto r = comparability_check(Phase::cosine(), spec, 1, h);
  double lo = INFINITY, hi = 0.0;
  for (int i = -5000; i <= 5000; ++i) {
    if (i == 0) continue;
    const double t = i * h;
    const double s = std::sin(0.5 * t);
    const double ratio = 2 * s * s / (t * t);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(r.points == 10000);
  CHECK(r.min_ratio == doctest::Approx(lo).epsilon(1e-6));
  CHECK(r.max_ratio == doctest::Approx(hi).epsilon(1e-6));
  CHECK(r.max_ratio <= 0.5 + 1e-6);
}
