#pragma once

#include "moyal/diff_operator.hpp"
#include "moyal/poly.hpp"

#include <string>
#include <string_view>

namespace moyal {

// Grammar (whitespace insignificant, no implicit multiplication):
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := base ('^' nonneg-int)?
//   base     := 'q' | 'p' | 'hbar' | 'i' | rational | '(' expr ')' | '-' factor
//   rational := int ('/' posint)?
// Errors carry a 1-based line/column: SyntaxError for anything unexpected,
// ExponentError for a negative/non-integer exponent, DivisionError when '/'
// touches anything but an integer literal.
PhasePoly parse_poly(std::string_view text);

// Canonical text form; parse_poly(format_poly(f)) == f and formatting is
// idempotent. The zero polynomial prints as "0".
std::string format_poly(const PhasePoly& f);

// One-line form of a differential operator, e.g.
// "((1/2)*i*hbar*p)*dq + ((1/2)*i*hbar*q)*dp". Display only.
std::string format_operator(const PolyDiffOperator& op);

}  // namespace moyal
