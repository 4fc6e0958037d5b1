#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

namespace moyal {

// Arbitrary-precision rational, kept normalized (positive denominator,
// gcd(|num|, den) = 1) by the backing type.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Decimal digits only (leading zeros allowed); throws std::invalid_argument
// on anything else.
BigInt bigint_from_digits(std::string_view digits);

// "n" or "n/d" with decimal digits; throws std::invalid_argument on anything else.
Rational rational_from_string(std::string_view text);

// Inverse of rational_from_string; omits "/1" for integers.
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

/// Complex number with exact rational real and imaginary parts. The
/// coefficient field of every polynomial in the engine; equality is exact.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(int value) : re(value) {}  // NOLINT: implicit by design
  GaussianRational(Rational real) : re(std::move(real)) {}
  GaussianRational(Rational real, Rational imag)
      : re(std::move(real)), im(std::move(imag)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussianRational conjugate() const { return {re, -im}; }

  std::complex<double> to_complex() const {
    return {rational_to_double(re), rational_to_double(im)};
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  // Field division; throws std::domain_error on zero divisor.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) {
    return a /= b;
  }
  friend GaussianRational operator-(const GaussianRational& a) {
    return {-a.re, -a.im};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  // Debug form "re+im*i"; canonical text output lives in the formatter.
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& value);

}  // namespace moyal
