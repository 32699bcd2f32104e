#include <random>

#include "doctest.h"
#include "genquad/analysis.hpp"
#include "genquad/error.hpp"
#include "genquad/text.hpp"
#include "oracles.hpp"

using namespace genquad;

namespace {

QuadraticForm quadratic(const std::string& text, const FieldContext& ctx) {
  return associated_form(parse_form(text, ctx)).q;
}

}  // namespace

TEST_CASE("delta for the identity") {
  const FieldContext k2(2);
  const auto cert = delta_lower_bound(quadratic("z1^2 + z2^2", k2));
  CHECK(cert.delta >= make_rational(1, 2));
  CHECK(cert.delta <= 1);
  CHECK(verify_certificate(cert));
}

TEST_CASE("delta stays below the smallest eigenvalue") {
  const FieldContext k2(2);
  // Smallest eigenvalue 3 - sqrt 5 of [[4, -2], [-2, 2]].
  const auto cert = delta_lower_bound(quadratic("4*z1^2 - 4*z1*z2 + 2*z2^2", k2));
  CHECK(sgn(cert.delta) > 0);
  CHECK(verify_certificate(cert));
  // delta ≤ 3 - sqrt 5  <=>  (3 - delta)^2 ≥ 5 with delta < 3.
  CHECK((3 - cert.delta) * (3 - cert.delta) >= 5);
  // The certificate is tight to a factor of two.
  CHECK_FALSE(shifted_is_semidefinite(cert.form, 2 * cert.delta + make_rational(1, 1000)));
}

TEST_CASE("delta is bounded by the conjugate embedding") {
  const FieldContext k2(2);
  const auto cert = delta_lower_bound(quadratic("(2+1s)*z1^2", k2));
  CHECK(verify_certificate(cert));
  // delta ≤ 2 - sqrt 2  <=>  (2 - delta)^2 ≥ 2.
  CHECK((2 - cert.delta) * (2 - cert.delta) >= 2);
}

TEST_CASE("delta rejects non-definite forms") {
  const FieldContext k2(2);
  CHECK_THROWS_AS(delta_lower_bound(quadratic("z1*z2", k2)), PreconditionError);
  CHECK_THROWS_AS(delta_lower_bound(quadratic("4*z1^2 - 4*z1*z2 + z2^2", k2)), PreconditionError);
  CHECK_THROWS_AS(generalized_delta(parse_form("z1*t(z1)", k2)), PreconditionError);
}

TEST_CASE("generalized delta") {
  const FieldContext k5(5);
  const auto cert = generalized_delta(parse_form("z1^2 + z2^2 + z3^2 + z4^2 + t(z4)^2", k5));
  CHECK(cert.form.n() == 5);
  CHECK(cert.delta >= make_rational(1, 2));
  CHECK(cert.delta <= 1);

  const GeneralizedForm g = parse_form("z1^2 + t(z1)^2", k5);
  const auto c2 = generalized_delta(g);
  CHECK(c2.delta > make_rational(1, 2));
  CHECK(c2.delta <= 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const FieldElement z = oracle::random_integer(k5, rng, 6);
    if (z.is_zero()) continue;
    const FieldElement v = evaluate_generalized(g, std::vector<FieldElement>{z});
    CHECK(v == trace(z * z));
    CHECK(v.a() >= make_rational(1, 2));
    CHECK(is_totally_nonnegative(v - FieldElement(c2.delta)));
  }
}

TEST_CASE("unit scaling") {
  const FieldContext k2(2);
  const auto s = unit_scale_down(k2, k2.element(2, 1), make_rational(1, 10));
  CHECK(s.n == 3);
  CHECK(s.epsilon == k2.element(-7, 5));
  CHECK(s.beta == k2.element(58, -41));
  CHECK(is_totally_positive(s.beta));
  CHECK(pow(k2.element(1, 1), 6) == k2.element(99, 70));

  const auto none = unit_scale_down(k2, k2.element(2, -1), 1);
  CHECK(none.n == 0);
  CHECK(none.epsilon == FieldElement(1));
  CHECK(none.beta == k2.element(2, -1));

  const auto one = unit_scale_down(k2, FieldElement(1), make_rational(1, 2));
  CHECK(one.n == 1);
  CHECK(one.beta == k2.element(3, -2));

  CHECK_THROWS_AS(unit_scale_down(k2, k2.element(1, 1), 1), PreconditionError);
  CHECK_THROWS_AS(unit_scale_down(k2, FieldElement(1), 0), PreconditionError);
}

TEST_CASE("unit scaling is minimal and keeps total positivity") {
  for (long d : {2, 3, 5, 13}) {
    const FieldContext ctx(d);
    const FieldElement u = ctx.fundamental_unit();
    for (const auto& alpha : enumerate_totally_positive(ctx, 20).elements) {
      for (const Rational delta : {make_rational(1, 7), make_rational(1, 2), Rational(3)}) {
        const auto s = unit_scale_down(ctx, alpha, delta);
        CHECK(s.beta == s.epsilon * s.epsilon * alpha);
        CHECK(s.epsilon == pow(u, -s.n));
        CHECK(is_totally_positive(s.beta));
        CHECK(less_than(s.beta, FieldElement(delta)));
        if (s.n >= 1) CHECK_FALSE(less_than(pow(u, -2 * (s.n - 1)) * alpha, FieldElement(delta)));
      }
    }
  }
}

TEST_CASE("generalized floor on random definite forms") {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 200; ++i) {
    const FieldContext ctx(i % 2 == 0 ? 2 : 5);
    const GeneralizedForm g = oracle::random_definite_generalized(ctx, rng, 3, 4, 6, true);
    const auto cert = generalized_delta(g);
    REQUIRE(verify_certificate(cert));
    const auto proper = proper_variables(g);
    int tested = 0;
    while (tested < 50) {
      std::vector<FieldElement> zv;
      bool proper_nonzero = false;
      for (int v = 1; v <= g.r(); ++v) {
        zv.push_back(oracle::random_integer(ctx, rng, 3));
        proper_nonzero = proper_nonzero || (proper.contains(v) && !zv.back().is_zero());
      }
      if (!proper_nonzero) continue;
      ++tested;
      CHECK(is_totally_nonnegative(evaluate_generalized(g, zv) - FieldElement(cert.delta)));
    }
  }
}

TEST_CASE("scaling a form keeps the old delta valid") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const FieldContext ctx(3);
    const auto g = oracle::random_definite_generalized(ctx, rng, 2, 4, 4, false);
    const auto cert = generalized_delta(g);
    QuadraticForm scaled(cert.form.n());
    const Rational c = 1 + make_rational(static_cast<long>(rng() % 5) + 1, 3);
    for (const auto& [key, v] : cert.form.coeffs()) scaled.add(key.first, key.second, v * FieldElement(c));
    const auto bigger = delta_lower_bound(scaled);
    CHECK(verify_certificate(bigger));
    CHECK(shifted_is_semidefinite(scaled, cert.delta));
  }
}
