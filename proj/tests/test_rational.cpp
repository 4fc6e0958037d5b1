#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/rational.hpp"

#include <stdexcept>

using namespace moyal;

TEST_CASE("rationals normalize to reduced form with positive denominator") {
  Rational r(2, 4);
  CHECK(numerator(r) == 1);
  CHECK(denominator(r) == 2);
  Rational s(3, -6);
  CHECK(numerator(s) == -1);
  CHECK(denominator(s) == 2);
  CHECK(Rational(0, 7) == Rational(0));
}

TEST_CASE("rational string round trips") {
  CHECK(rational_to_string(Rational(-3, 2)) == "-3/2");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_from_string("-3/2") == Rational(-3, 2));
  CHECK(rational_from_string("5") == Rational(5));
  CHECK(rational_from_string("+7/14") == Rational(1, 2));
  CHECK(rational_from_string("007/014") == Rational(1, 2));
  CHECK(rational_from_string("123456789012345678901234567890") ==
        Rational(BigInt{"123456789012345678901234567890"}, 1));
  CHECK_THROWS_AS(rational_from_string("3/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("3/-2"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("1.5"), std::invalid_argument);
}

TEST_CASE("bigint_from_digits tolerates leading zeros") {
  CHECK(bigint_from_digits("0") == 0);
  CHECK(bigint_from_digits("000") == 0);
  CHECK(bigint_from_digits("09") == 9);
  CHECK_THROWS_AS(bigint_from_digits("1x"), std::invalid_argument);
}

TEST_CASE("gaussian rational field operations") {
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  GaussianRational z(Rational(1, 2), Rational(-3, 4));
  CHECK(z + z.conjugate() == GaussianRational(Rational(1)));
  CHECK(z * GaussianRational(1) == z);
  CHECK(-(-z) == z);

  GaussianRational w(Rational(2), Rational(1));
  CHECK(z * w / w == z);
  CHECK(w / w == GaussianRational(1));
  CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);

  CHECK(GaussianRational(0).is_zero());
  CHECK(GaussianRational(Rational(3)).is_real());
  CHECK(!i.is_real());

  auto c = z.to_complex();
  CHECK(c.real() == doctest::Approx(0.5));
  CHECK(c.imag() == doctest::Approx(-0.75));
}

TEST_CASE("gaussian rational multiplication is exact") {
  // (1/3 + 2/3 i)(3/5 - 3/10 i) = (1/5 + 1/5) + (2/5 - 1/10) i
  GaussianRational a(Rational(1, 3), Rational(2, 3));
  GaussianRational b(Rational(3, 5), Rational(-3, 10));
  CHECK(a * b == GaussianRational(Rational(2, 5), Rational(3, 10)));
}
