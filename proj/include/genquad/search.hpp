#pragma once

// Representation search, trace-bounded universality checks and indecomposable
// elements.
//
// Candidate assignments are enumerated variable by variable. Within one
// variable, integral-basis coordinates (p, q) of z = p + q*w run in descending
// lexicographic order; the first witness met in this order is returned. A
// branch is abandoned as soon as the partial sum of squares from
// `square_decomposition` exceeds the target in either embedding, which never
// discards a solution.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "genquad/analysis.hpp"
#include "genquad/field.hpp"
#include "genquad/forms.hpp"

namespace genquad {

struct RepresentationWitness {
  std::vector<FieldElement> assignment;
  FieldElement value;
};

struct SearchVerdict {
  enum class Tag { found, none_complete, none_within_height };

  Tag tag = Tag::none_complete;
  std::optional<RepresentationWitness> witness;
  /// Definite search: bound B on |z| + |conj z| for every coordinate.
  /// Bounded search: the height H on integral-basis coordinates.
  Integer bound;

  bool found() const { return tag == Tag::found; }
};

std::string_view to_string(SearchVerdict::Tag tag);

struct SearchOptions {
  /// Worker threads splitting the first variable's candidates. The returned
  /// witness does not depend on this value.
  int parallel = 1;
};

/// Complete decision for a totally positive definite integral form. Every
/// coordinate x (a column of the associated form) of a solution satisfies
/// delta*x^2 ⪯ alpha, which bounds the box. Rejects semidefinite input.
SearchVerdict represent_definite(const FieldContext& ctx, const GeneralizedForm& f, const FieldElement& alpha,
                                 const DeltaCertificate& cert, const SearchOptions& options = {});
SearchVerdict represent_definite(const FieldContext& ctx, const QuadraticForm& f, const FieldElement& alpha,
                                 const DeltaCertificate& cert, const SearchOptions& options = {});

/// Exhaustive search over coordinates with |p|, |q| ≤ height. Never claims
/// completeness.
SearchVerdict represent_bounded(const FieldContext& ctx, const GeneralizedForm& f, const FieldElement& alpha,
                                const Integer& height, const SearchOptions& options = {});

struct DefiniteStrategy {
  DeltaCertificate cert;
};
struct BoundedStrategy {
  Integer height;
};
struct CustomStrategy {
  std::function<SearchVerdict(const FieldElement&)> prover;
};
using Strategy = std::variant<DefiniteStrategy, BoundedStrategy, CustomStrategy>;

struct UniversalityReport {
  Integer trace_bound;
  std::size_t checked = 0;
  std::vector<std::pair<FieldElement, SearchVerdict>> failures;
};

/// Runs the strategy on every totally positive integer of trace ≤ trace_bound.
UniversalityReport universality_report(const FieldContext& ctx, const GeneralizedForm& f, const Integer& trace_bound,
                                       const Strategy& strategy, const SearchOptions& options = {});

struct IndecomposableListing {
  Integer trace_bound;
  std::vector<FieldElement> elements;  ///< sorted by (trace, b)
};

/// Totally positive integers of trace ≤ trace_bound that are not a sum of two
/// totally positive integers.
IndecomposableListing indecomposables_up_to(const FieldContext& ctx, const Integer& trace_bound);

/// Greedy split into indecomposables: repeatedly subtract the admissible
/// indecomposable of largest trace (ties: larger b).
std::vector<FieldElement> decompose(const FieldContext& ctx, const FieldElement& alpha);
/// Same, reusing a listing whose trace bound covers alpha.
std::vector<FieldElement> decompose(const IndecomposableListing& listing, const FieldElement& alpha);

}  // namespace genquad
