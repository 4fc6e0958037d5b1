#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/random.hpp"
#include "moyal/star.hpp"

#include <vector>

using namespace moyal;

namespace {
const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const PhasePoly hb = PhasePoly::hbar();
const GaussianRational I = GaussianRational::i();
const GaussianRational half(Rational(1, 2));
}  // namespace

TEST_CASE("star product deformation at first order") {
  CHECK(star(p, q) == p * q - hb * (I * half));
  CHECK(star(q, p) == q * p + hb * (I * half));
  CHECK(star(q, q) == q * q);
  CHECK(star(p, p) == p * p);
}

TEST_CASE("star of q^2 and p^2") {
  PhasePoly expected = q * q * p * p + q * p * hb * (I * GaussianRational(2)) -
                       hb * hb * half;
  CHECK(star(q * q, p * p) == expected);
  CHECK(star_bopp(q * q, p * p) == expected);
}

TEST_CASE("star square of the oscillator hamiltonian") {
  PhasePoly H0 = (p * p + q * q) * half;
  // hand expansion of the k <= 2 series: H0^2 - hbar^2/4
  PhasePoly expected = H0 * H0 - hb * hb * GaussianRational(Rational(1, 4));
  CHECK(star(H0, H0) == expected);
}

TEST_CASE("bopp route reproduces the series route") {
  CHECK(star_bopp(p, q) == p * q - hb * (I * half));
  PhasePoly expected = pow(q, 3) * pow(p, 3) +
                       q * q * p * p * hb * (I * GaussianRational(Rational(9, 2))) -
                       q * p * hb * hb * GaussianRational(Rational(9, 2)) -
                       pow(hb, 3) * (I * GaussianRational(Rational(3, 4)));
  CHECK(star_bopp(pow(q, 3), pow(p, 3)) == expected);
  CHECK(star(pow(q, 3), pow(p, 3)) == expected);

  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    PhasePoly f = rng.poly(), g = rng.poly();
    CHECK(star(f, g) == star_bopp(f, g));
    CHECK(star_bopp(f, PhasePoly(1)) == f);
    CHECK(star_bopp(PhasePoly(1), f) == f);
  }
}

TEST_CASE("poisson bracket") {
  CHECK(poisson(q, p) == PhasePoly(1));
  PhasePoly H0 = (p * p + q * q) * half;
  CHECK(poisson(H0, q) == -p);
  Rng rng(5);
  PhasePoly f = rng.poly();
  CHECK(poisson(f, f).is_zero());
}

TEST_CASE("moyal bracket") {
  CHECK(moyal_bracket(q, p) == hb * I);
  PhasePoly expected = q * q * p * p * hb * (I * GaussianRational(9)) -
                       pow(hb, 3) * (I * GaussianRational(Rational(3, 2)));
  CHECK(moyal_bracket(pow(q, 3), pow(p, 3)) == expected);
  // oracle: both star routes, both orders
  CHECK(star_bopp(pow(q, 3), pow(p, 3)) - star_bopp(pow(p, 3), pow(q, 3)) ==
        expected);
  Rng rng(6);
  PhasePoly f = rng.poly();
  CHECK(moyal_bracket(f, f).is_zero());
}

TEST_CASE("cross product") {
  CHECK(cross(q, p) == PhasePoly(GaussianRational(half)));
  Rng rng(13);
  PhasePoly f = rng.poly();
  CHECK(cross(f, PhasePoly(9)).is_zero());
  CHECK(cross(q, p) - cross(p, q) == poisson(q, p));
}

TEST_CASE("cross product is not associative; star is") {
  auto [f, g, h] = cross_nonassoc_witness();
  PhasePoly lhs = cross(cross(f, g), h);
  PhasePoly rhs = cross(f, cross(g, h));
  CHECK(lhs != rhs);
  CHECK(star(star(f, g), h) == star(f, star(g, h)));

  // oracle: exhaustive search over monomial triples of total degree <= 3
  // confirms the witness and that violations exist at all.
  std::vector<PhasePoly> monos;
  for (unsigned d = 0; d <= 3; ++d) {
    for (unsigned a = 0; a <= d; ++a) {
      monos.push_back(PhasePoly::term(Monomial{a, d - a, 0}, 1));
    }
  }
  int violations = 0;
  for (const auto& a : monos) {
    for (const auto& b : monos) {
      for (const auto& c : monos) {
        if (cross(cross(a, b), c) != cross(a, cross(b, c))) ++violations;
      }
    }
  }
  CHECK(violations > 0);
  CHECK(f.degree_qp() <= 3);
  CHECK(g.degree_qp() <= 3);
  CHECK(h.degree_qp() <= 3);
}

TEST_CASE("star associativity on random triples") {
  Rng rng(99);
  for (int t = 0; t < 40; ++t) {
    PhasePoly f = rng.poly(), g = rng.poly(), h = rng.poly();
    CHECK(star(star(f, g), h) == star(f, star(g, h)));
  }
}

TEST_CASE("moyal bracket leading order on hbar-free observables") {
  Rng rng(123);
  const PhasePoly i_hbar = hb * I;
  for (int t = 0; t < 30; ++t) {
    PhasePoly f = rng.poly(5, 0, 4), g = rng.poly(5, 0, 4);
    PhasePoly rest = moyal_bracket(f, g) - i_hbar * poisson(f, g);
    for (const auto& [m, c] : rest.terms()) {
      CHECK(m.hbar_pow >= 3);
      CHECK(m.hbar_pow % 2 == 1);
    }
  }
}
