#include "moyal/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace moyal {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt bigint_from_digits(std::string_view digits) {
  if (!all_digits(digits)) {
    throw std::invalid_argument("expected decimal digits: " + std::string(digits));
  }
  // cpp_int's own parser reads a leading 0 as an octal prefix.
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return BigInt(0);
  return BigInt{std::string(digits.substr(first))};
}

Rational rational_from_string(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
    if (!all_digits(den)) {
      throw std::invalid_argument("bad rational literal: " + std::string(text));
    }
  }
  if (!all_digits(num)) {
    throw std::invalid_argument("bad rational literal: " + std::string(text));
  }
  BigInt n = bigint_from_digits(num);
  BigInt d = den.empty() ? BigInt(1) : bigint_from_digits(den);
  if (d == 0) {
    throw std::invalid_argument("zero denominator: " + std::string(text));
  }
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

std::string rational_to_string(const Rational& value) {
  std::string s = numerator(value).str();
  if (denominator(value) != 1) {
    s += "/" + denominator(value).str();
  }
  return s;
}

double rational_to_double(const Rational& value) {
  return value.convert_to<double>();
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational norm = o.re * o.re + o.im * o.im;
  if (norm == 0) {
    throw std::domain_error("division by zero GaussianRational");
  }
  Rational r = (re * o.re + im * o.im) / norm;
  Rational i = (im * o.re - re * o.im) / norm;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string GaussianRational::str() const {
  if (im == 0) return rational_to_string(re);
  std::string s;
  if (re != 0) {
    s += rational_to_string(re);
    if (im > 0) s += "+";
  }
  s += rational_to_string(im) + "*i";
  return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& value) {
  return os << value.str();
}

}  // namespace moyal
