#include "moyal/json_io.hpp"

#include "moyal/errors.hpp"

#include <json.hpp>

namespace moyal {

namespace {

using nlohmann::json;

json term_to_json(const Monomial& m, const GaussianRational& c) {
  return json{{"q", m.q_pow},
              {"p", m.p_pow},
              {"hbar", m.hbar_pow},
              {"re", rational_to_string(c.re)},
              {"im", rational_to_string(c.im)}};
}

unsigned read_power(const json& term, const char* field) {
  if (!term.contains(field)) {
    throw SchemaError(std::string("term missing field \"") + field + "\"");
  }
  const json& v = term.at(field);
  if (!v.is_number_unsigned()) {
    throw SchemaError(std::string("field \"") + field +
                      "\" must be a nonnegative integer");
  }
  return v.get<unsigned>();
}

Rational read_rational(const json& term, const char* field) {
  if (!term.contains(field)) {
    throw SchemaError(std::string("term missing field \"") + field + "\"");
  }
  const json& v = term.at(field);
  if (!v.is_string()) {
    throw SchemaError(std::string("field \"") + field +
                      "\" must be a rational string");
  }
  try {
    return rational_from_string(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("field \"") + field + "\": " + e.what());
  }
}

}  // namespace

std::string poly_to_json_string(const PhasePoly& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    terms.push_back(term_to_json(m, c));
  }
  return json{{"terms", std::move(terms)}}.dump();
}

PhasePoly poly_from_json_string(std::string_view text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    throw SchemaError("malformed JSON");
  }
  if (!root.is_object() || !root.contains("terms") || !root["terms"].is_array()) {
    throw SchemaError("expected an object with a \"terms\" array");
  }
  PhasePoly out;
  for (const json& term : root["terms"]) {
    if (!term.is_object()) {
      throw SchemaError("each term must be an object");
    }
    Monomial m{read_power(term, "q"), read_power(term, "p"),
               read_power(term, "hbar")};
    GaussianRational c(read_rational(term, "re"), read_rational(term, "im"));
    out.add_term(m, c);
  }
  return out;
}

std::string operator_to_json_string(const PolyDiffOperator& op) {
  json terms = json::array();
  for (const auto& [d, coeff] : op.terms()) {
    terms.push_back(json{{"dq", d.dq},
                         {"dp", d.dp},
                         {"coeff", json::parse(poly_to_json_string(coeff))}});
  }
  return json{{"terms", std::move(terms)}}.dump();
}

}  // namespace moyal
