#pragma once

#include "moyal/diff_operator.hpp"
#include "moyal/poly.hpp"

#include <string>
#include <string_view>

namespace moyal {

// {"terms":[{"q":a,"p":b,"hbar":h,"re":"num/den","im":"num/den"}, ...]} with
// terms in canonical order and rationals as decimal-digit strings ("/1"
// omitted). An empty term list is the zero polynomial.
std::string poly_to_json_string(const PhasePoly& f);

// Throws SchemaError on malformed JSON or on anything not matching the
// schema above (missing fields, wrong types, negative powers, bad rationals).
PhasePoly poly_from_json_string(std::string_view text);

// {"terms":[{"dq":a,"dp":b,"coeff":<poly>}, ...]}
std::string operator_to_json_string(const PolyDiffOperator& op);

}  // namespace moyal
