#include <random>

#include "doctest.h"
#include "genquad/error.hpp"
#include "genquad/paperlab.hpp"
#include "genquad/text.hpp"
#include "oracles.hpp"

using namespace genquad;
using namespace genquad::paperlab;

TEST_CASE("counterexample bundle") {
  const auto b = build_counterexample();
  const FieldContext& k2 = b.ctx;
  CHECK(b.epsilon == pow(k2.fundamental_unit(), 2));
  CHECK(b.beta == k2.element(2, 1));
  CHECK(b.g.r() == 12);
  CHECK(proper_variables(b.g) == std::set<int>{5, 6, 7, 8, 9, 10, 11, 12});
  CHECK(proper_variables(b.h).size() == 8);
  REQUIRE(b.h_weights.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(b.h_weights[static_cast<std::size_t>(i)] == pow(b.epsilon, i % 4) * pow(b.beta, i / 4));
  CHECK(classify_definiteness(b.g) == DefinitenessClass::totally_positive_semidefinite_only);
  CHECK(classify_definiteness(b.s) == DefinitenessClass::totally_positive_definite);
  CHECK(associated_form(b.g).q.n() == 20);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    std::vector<FieldElement> zv;
    for (int v = 0; v < 12; ++v) zv.push_back(oracle::random_integer(k2, rng, 3));
    CHECK(is_totally_nonnegative(evaluate_generalized(b.g, zv)));
  }
}

TEST_CASE("l and g") {
  const FieldContext k2(2);
  CHECK(ell_and_g(FieldElement(1)) == std::pair<FieldElement, FieldElement>{1, 1});
  const auto [l, g] = ell_and_g(k2.element(17, 4));
  CHECK(l == k2.element(17, 12));
  CHECK(g == k2.element(577, 408));
  CHECK(ell_preimage(k2.element(17, 12)) == k2.element(17, 4));
  CHECK_FALSE(ell_preimage(k2.element(3, 2)).has_value());

  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const FieldElement z = oracle::random_integer(k2, rng, 50);
    const auto [li, gi] = ell_and_g(z);
    // The image of l is exactly {a + b sqrt 2 : 3 | b}.
    CHECK(mpz_divisible_ui_p(li.b().get_num().get_mpz_t(), 3) != 0);
    CHECK(gi == li * li);
    CHECK(ell_preimage(li) == z);
  }
}

TEST_CASE("H represents each odd indecomposable with one slot") {
  const auto b = build_counterexample();
  const FieldContext& k2 = b.ctx;
  const auto w1 = represent_by_H(b, b.epsilon);
  CHECK(w1.assignment[1] == FieldElement(1));
  const auto w2 = represent_by_H(b, pow(b.epsilon, 4) * b.beta);
  CHECK(w2.assignment[4] == k2.element(17, 4));
  const auto w3 = represent_by_H(FieldElement(1));
  CHECK(w3.assignment[0] == FieldElement(1));
  CHECK(indecomposable_exponents(b, pow(b.epsilon, -3) * b.beta) == std::pair<long, int>{-3, 1});
  CHECK_THROWS_AS(indecomposable_exponents(b, FieldElement(2)), PreconditionError);

  for (const auto& eta : indecomposables_up_to(k2, 100).elements) {
    const auto w = represent_by_H(b, eta);
    CHECK(w.value == eta);
    CHECK(evaluate_generalized(b.h, w.assignment) == eta);
    int nonzero = 0;
    for (const auto& x : w.assignment) nonzero += x.is_zero() ? 0 : 1;
    CHECK(nonzero == 1);
  }
}

TEST_CASE("epsilon squared powers stay in the image of l") {
  const auto b = build_counterexample();
  const ResidueZSqrt2 e2 = reduce_mod(pow(b.epsilon, 2), 3);
  CHECK(e2 == ResidueZSqrt2{2, 0, 3});
  for (long n = 1; n <= 20; ++n) {
    const FieldElement full = pow(b.epsilon, 2 * n);
    const ResidueZSqrt2 r = residue_pow(reduce_mod(b.epsilon, 3), 2 * n);
    CHECK(r == reduce_mod(full, 3));
    CHECK(r.b == 0);
    CHECK(ell_preimage(full).has_value());
  }
  CHECK_THROWS_AS(reduce_mod(FieldContext(3).element(1, 1), 3), PreconditionError);
}

TEST_CASE("counterexample verification on a small range") {
  const auto report = verify_counterexample(10);
  const FieldContext k2(2);
  CHECK(report.entries.size() == enumerate_totally_positive(k2, 10).elements.size());
  CHECK(report.subform_target == k2.element(3, 1));
  CHECK(report.subform_checks.size() == 15);
  for (const auto& c : report.subform_checks) CHECK(c.verdict.tag == SearchVerdict::Tag::none_complete);
  const auto b = build_counterexample();
  bool split_seen = false;
  for (const auto& e : report.entries) {
    CHECK(evaluate_generalized(b.g, e.witness) == e.alpha);
    if (e.route == CounterexampleEntry::Route::split) {
      split_seen = true;
      CHECK(oracle::indecomposable_by_definition(k2, e.eta));
    }
  }
  CHECK(split_seen);
  CHECK_THROWS_AS(verify_counterexample(1), PreconditionError);
}

TEST_CASE("bounded search also represents small targets by G") {
  const auto b = build_counterexample();
  // Height taken from the constructive witness, so a solution lies in the box.
  for (const auto& e : verify_counterexample(6).entries) {
    Integer height = 0;
    for (const auto& x : e.witness) {
      const auto c = b.ctx.to_basis(x);
      for (const Rational& r : {c.p, c.q}) height = std::max(height, Integer(abs(r.get_num())));
    }
    const auto v = represent_bounded(b.ctx, b.g, e.alpha, height);
    REQUIRE(v.found());
    CHECK(evaluate_generalized(b.g, v.witness->assignment) == e.alpha);
  }
}

TEST_CASE("theorem pipeline") {
  const FieldContext k5(5);
  const GeneralizedForm g = parse_form("z1^2 + z2^2 + z3^2 + z4^2 + t(z4)^2", k5);
  const auto out = theorem_pipeline(k5, g, 12);
  CHECK(out.subform_source.source_var == std::vector<int>{1, 2, 3});
  CHECK(out.subform == associated_form(parse_form("z1^2 + z2^2 + z3^2", k5)).q);
  CHECK(out.per_target.size() == enumerate_totally_positive(k5, 12).elements.size());
  for (const auto& t : out.per_target) {
    CHECK(t.beta_witness[3].is_zero());
    CHECK(evaluate_quadratic(out.subform, t.alpha_witness) == t.scaled.alpha);
    CHECK(less_than(t.scaled.beta, FieldElement(out.delta.delta)));
  }

  // Conjugated non-proper variable: recovery divides by the conjugate unit.
  const GeneralizedForm c = parse_form("t(z1)^2 + z2^2 + z3^2 + z4^2 + t(z4)^2", k5);
  const auto oc = theorem_pipeline(k5, c, 8);
  for (const auto& t : oc.per_target) {
    CHECK(evaluate_generalized(oc.subform_source.form, t.alpha_witness) == t.scaled.alpha);
  }

  CHECK_THROWS_AS(theorem_pipeline(FieldContext(2), parse_form("z1*t(z1)", FieldContext(2)), 4),
                  PreconditionError);
  // Four squares over Q(sqrt 2) is not universal.
  const FieldContext k2(2);
  CHECK_THROWS_AS(theorem_pipeline(k2, parse_form("z1^2 + z2^2 + z3^2 + z4^2", k2), 6), PreconditionError);
}
