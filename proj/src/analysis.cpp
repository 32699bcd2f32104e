#include "genquad/analysis.hpp"

#include <optional>

#include "genquad/error.hpp"

namespace genquad {

namespace {

constexpr int max_iterations = 64;

// Rational r ≥ min(x, conj(x)) for x = a + b sqrt(D): a - |b| * floor(sqrt(D)).
Rational rational_upper_bound_of_min_embedding(const FieldElement& x) {
  if (x.is_rational()) return x.a();
  const Rational s(sqrt(Integer(x.d())));
  return x.a() - abs(x.b()) * s;
}

}  // namespace

DeltaCertificate delta_lower_bound(const QuadraticForm& q) {
  if (classify_definiteness(q) != DefinitenessClass::totally_positive_definite) {
    throw PreconditionError("delta bound requires a totally positive definite form");
  }
  DeltaCertificate cert{0, q, 0};
  if (q.n() == 0) {
    cert.delta = 1;
    return cert;
  }
  std::optional<Rational> hi;
  for (int i = 1; i <= q.n(); ++i) {
    const Rational bound = rational_upper_bound_of_min_embedding(q.coeff(i, i));
    if (!hi || bound < *hi) hi = bound;
  }
  if (shifted_is_semidefinite(q, *hi)) {
    cert.delta = *hi;
    return cert;
  }
  Rational lo = 0;
  Rational top = *hi;
  while (cert.iterations < max_iterations) {
    if (sgn(lo) > 0 && top <= 2 * lo) break;
    ++cert.iterations;
    Rational mid = (lo + top) / 2;
    if (shifted_is_semidefinite(q, mid)) {
      lo = mid;
    } else {
      top = mid;
    }
  }
  if (sgn(lo) <= 0) throw ContractFailure("no positive delta found for a definite form");
  cert.delta = lo;
  return cert;
}

DeltaCertificate generalized_delta(const GeneralizedForm& g) {
  const AssociatedForm assoc = associated_form(g);
  if (classify_definiteness(assoc.q) != DefinitenessClass::totally_positive_definite) {
    throw PreconditionError("generalized form is not totally positive definite");
  }
  return delta_lower_bound(assoc.q);
}

bool verify_certificate(const DeltaCertificate& cert) {
  return sgn(cert.delta) > 0 && shifted_is_semidefinite(cert.form, cert.delta);
}

ScaledTarget unit_scale_down(const FieldContext& ctx, const FieldElement& alpha, const Rational& delta) {
  if (!is_totally_positive(alpha)) throw PreconditionError("target must be totally positive");
  if (sgn(delta) <= 0) throw PreconditionError("delta must be positive");
  const FieldElement inverse = FieldElement(1) / ctx.fundamental_unit();
  const FieldElement inverse_sq = inverse * inverse;
  const FieldElement bound(delta);
  ScaledTarget out{alpha, FieldElement(1), 0, alpha};
  while (!less_than(out.beta, bound)) {
    ++out.n;
    out.epsilon *= inverse;
    out.beta *= inverse_sq;
  }
  return out;
}

}  // namespace genquad
