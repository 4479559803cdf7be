#pragma once

// Text syntax shared by every input format:
//
//   polynomials        t^2 - t + 1,  3/4*t^3 - 2*t
//   rational functions (t - 1)/(t^2 - t + 1),  t^-1
//   scalars            -3/4
//   extension elements theta + 1 (mod theta^2 - theta + 1)
//
// Juxtaposition multiplies ("2t", "(t - 1)(t + 1)"). Everything the library
// prints parses back to the same value and prints identically.

#include <string>
#include <string_view>

#include "endotorsion/ratfunc.hpp"

namespace endotorsion {

/// Rational expression in `var` over `field`. Over an extension field the
/// field's symbol denotes its generator.
RatFunc parse_ratfunc(std::string_view text, const Field& field = Field::rationals(), const std::string& var = "t");

/// Same, but the result must be a polynomial.
Poly parse_poly(std::string_view text, const Field& field = Field::rationals(), const std::string& var = "t");

/// A constant expression (no indeterminate).
FieldElem parse_scalar(std::string_view text, const Field& field = Field::rationals());

/// Integer literal with optional sign.
Integer parse_integer(std::string_view text);

/// "expr (mod m)": builds (or reuses) the extension base[x]/(m), where x is the
/// identifier appearing in m, and returns the class of expr.
FieldElem parse_ext_element(std::string_view text, const Field& base = Field::rationals());

/// Field names as printed by Field::name(): "Q", "F7", or "Q[theta]/(theta^2 + 1)".
Field parse_field(std::string_view text);

}  // namespace endotorsion
