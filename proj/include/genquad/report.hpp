#pragma once

// JSON serialization of results. Key order is fixed (ordered_json), so equal
// inputs give byte-identical documents.

#include <nlohmann/json.hpp>

#include "genquad/analysis.hpp"
#include "genquad/field.hpp"
#include "genquad/forms.hpp"
#include "genquad/paperlab.hpp"
#include "genquad/search.hpp"

namespace genquad::report {

using Json = nlohmann::ordered_json;

/// {"a":"p/q","b":"p/q"}
Json element(const FieldElement& x);
Json elements(const std::vector<FieldElement>& xs);
/// {"text":..., "variables":n, "coeffs":[["z1","t(z1)",{"a":..,"b":..}], ...]}
Json form(const GeneralizedForm& g);
Json form(const QuadraticForm& q);
Json associated(const AssociatedForm& assoc);
/// {"delta":"p/q","iterations":k}
Json certificate(const DeltaCertificate& cert);
Json verdict(const SearchVerdict& v);
Json universality(const UniversalityReport& r);
Json counterexample(const paperlab::CounterexampleReport& r);
Json theorem(const paperlab::TheoremOutcome& t);

}  // namespace genquad::report
