#pragma once

// Text formats.
//
// Elements:  R | R+Rs | R-Rs    with R = p or p/q, s = sqrt(D); whitespace is
//            ignored. Examples: `58-41s`, `3/2+1/2s`.
// Forms:     form  := term (('+'|'-') term)*   (optionally signed first term)
//            term  := [coeff '*'] mono
//            mono  := atom '^2' | atom '*' atom
//            atom  := zN | t(zN)                 (t is conjugation, N ≥ 1)
//            coeff := p | p/q | '(' element ')'
//            The literal `0` is the empty form.
// D is never part of the text; it comes from the FieldContext.

#include <string>
#include <string_view>

#include "genquad/field.hpp"
#include "genquad/forms.hpp"

namespace genquad {

/// Throws ParseError with the byte offset of the problem.
FieldElement parse_element(std::string_view text, const FieldContext& ctx);

/// Parses a generalized form; like terms are combined. The variable count is
/// the largest index used, or `min_vars` if larger.
GeneralizedForm parse_form(std::string_view text, const FieldContext& ctx, int min_vars = 0);

std::string to_string(const Atom& atom);
/// Canonical text: terms in sorted coefficient order.
std::string to_string(const GeneralizedForm& g);
std::string to_string(const QuadraticForm& q);

}  // namespace genquad
