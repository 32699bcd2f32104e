#pragma once

// Executable versions of the two constructions around universal generalized
// forms over real quadratic fields:
//
//  * the extraction pipeline: a totally positive definite generalized form
//    that represents every small scaled target does so through the quadratic
//    subform on its non-proper variables;
//  * the semidefinite counterexample over Q(sqrt 2): G = S + H where
//    S = x1^2 + x2^2 + x3^2 + x4^2 and H is a weighted sum of
//    g(z) = (2z - conj z)^2, universal although no quadratic subform is.

#include <set>
#include <utility>
#include <vector>

#include "genquad/analysis.hpp"
#include "genquad/field.hpp"
#include "genquad/forms.hpp"
#include "genquad/search.hpp"

namespace genquad::paperlab {

struct CounterexampleBundle {
  FieldContext ctx{2};
  QuadraticForm s;      ///< four squares
  GeneralizedForm h;    ///< 8 proper variables
  GeneralizedForm g;    ///< s on variables 1..4, h on 5..12
  FieldElement epsilon; ///< 3 + 2 sqrt 2
  FieldElement beta;    ///< 2 + sqrt 2
  /// Weight of slot i (0-based) of h: epsilon^(i mod 4) * beta^(i / 4).
  std::vector<FieldElement> h_weights;
};

CounterexampleBundle build_counterexample();

/// (l(z), g(z)) with l(z) = 2z - conj(z) and g = l^2.
std::pair<FieldElement, FieldElement> ell_and_g(const FieldElement& z);

/// z with l(z) = target, when one exists in Z[sqrt 2] (irrational part of the
/// target divisible by 3).
std::optional<FieldElement> ell_preimage(const FieldElement& target);

/// Element of Z[sqrt 2] / m Z[sqrt 2] stored as reduced coordinates.
struct ResidueZSqrt2 {
  long a = 0;
  long b = 0;
  long m = 3;

  friend ResidueZSqrt2 operator*(const ResidueZSqrt2& x, const ResidueZSqrt2& y);
  friend bool operator==(const ResidueZSqrt2&, const ResidueZSqrt2&) = default;
};

ResidueZSqrt2 reduce_mod(const FieldElement& x, long m);
ResidueZSqrt2 residue_pow(ResidueZSqrt2 x, long e);

/// Writes eta = epsilon^k * beta^e (e in {0, 1}) and returns (k, e). Throws
/// PreconditionError if eta has no such form.
std::pair<long, int> indecomposable_exponents(const CounterexampleBundle& bundle, const FieldElement& eta);

/// Witness for eta on the 8 variables of h: with k = 4q + s, slot s (or 4 + s)
/// receives z with l(z) = epsilon^(2q).
RepresentationWitness represent_by_H(const CounterexampleBundle& bundle, const FieldElement& eta);
RepresentationWitness represent_by_H(const FieldElement& eta);

struct CounterexampleEntry {
  enum class Route { squares, split };

  FieldElement alpha;
  Route route = Route::squares;
  /// The odd part handled by h (split route only).
  FieldElement eta;
  std::vector<FieldElement> witness;  ///< 12 coordinates of g
};

struct SubformCheck {
  std::set<int> keep;
  SearchVerdict verdict;
};

struct CounterexampleReport {
  Integer trace_bound;
  DefinitenessClass g_class = DefinitenessClass::not_semidefinite;
  DefinitenessClass s_class = DefinitenessClass::not_semidefinite;
  std::vector<CounterexampleEntry> entries;
  FieldElement subform_target;  ///< 3 + sqrt 2
  std::vector<SubformCheck> subform_checks;
};

/// Represents every totally positive integer of trace ≤ trace_bound by g along
/// the constructive route and checks that none of the 15 nonempty subforms of
/// s represents 3 + sqrt 2. Throws ContractFailure naming the offending element
/// on any failed step.
CounterexampleReport verify_counterexample(const Integer& trace_bound, const SearchOptions& options = {});

struct TargetTrace {
  ScaledTarget scaled;
  std::vector<FieldElement> beta_witness;   ///< all r variables; proper ones zero
  std::vector<FieldElement> alpha_witness;  ///< subform variables
};

struct TheoremOutcome {
  Subform subform_source;  ///< the non-proper variables as a generalized form
  QuadraticForm subform;   ///< same, flags dropped
  DeltaCertificate delta;
  Integer verified_to;
  std::vector<TargetTrace> per_target;
};

/// For each totally positive alpha with Tr ≤ trace_bound: scale to beta < delta,
/// represent beta by g, check that every proper coordinate is zero, and divide
/// back to a witness for alpha on the quadratic subform.
TheoremOutcome theorem_pipeline(const FieldContext& ctx, const GeneralizedForm& g, const Integer& trace_bound,
                                const SearchOptions& options = {});

}  // namespace genquad::paperlab
