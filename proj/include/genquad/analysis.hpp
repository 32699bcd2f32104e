#pragma once

// Lower bounds for totally positive definite forms and unit scaling of targets.

#include "genquad/field.hpp"
#include "genquad/forms.hpp"

namespace genquad {

/// A rational delta > 0 with q ⪰ delta*(x_1^2 + ... + x_n^2).
struct DeltaCertificate {
  Rational delta;
  QuadraticForm form;
  int iterations = 0;
};

/// Binary search for delta over [0, h] where h is a rational upper bound on the
/// smallest diagonal Gram entry in either embedding. Stops as soon as
/// hi/lo <= 2 or after 64 halvings and returns lo. Rejects non-definite input.
DeltaCertificate delta_lower_bound(const QuadraticForm& q);

/// Certificate of the associated quadratic form. For integral z with a nonzero
/// proper variable z_i, g(z) ⪰ delta*Tr(z_i^2) ⪰ delta.
DeltaCertificate generalized_delta(const GeneralizedForm& g);

/// Re-runs the exact semidefiniteness test of form - delta*I.
bool verify_certificate(const DeltaCertificate& cert);

struct ScaledTarget {
  FieldElement alpha;
  FieldElement epsilon;  ///< u^(-n) for the fundamental unit u
  long n = 0;
  FieldElement beta;  ///< epsilon^2 * alpha
};

/// Smallest n ≥ 0 with u^(-2n)*alpha < delta in the first embedding.
ScaledTarget unit_scale_down(const FieldContext& ctx, const FieldElement& alpha, const Rational& delta);

}  // namespace genquad
