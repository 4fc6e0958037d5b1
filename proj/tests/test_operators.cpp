#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/diff_operator.hpp"
#include "moyal/flows.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"

using namespace moyal;

namespace {
const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const GaussianRational I = GaussianRational::i();

PhasePoly mono(unsigned a, unsigned b, unsigned h, GaussianRational c) {
  return PhasePoly::term(Monomial{a, b, h}, c);
}
}  // namespace

TEST_CASE("operator application agrees with repeated diff and is linear") {
  PolyDiffOperator op;
  op.add_term({2, 1}, q * p);           // q p dq^2 dp
  op.add_term({0, 0}, PhasePoly(3));    // constant term
  PhasePoly f = pow(q, 3) * pow(p, 2);
  PhasePoly expected = q * p * GaussianRational(12) * q * p +  // qp * 6q * 2p
                       f * GaussianRational(3);
  CHECK(op.apply(f) == expected);
  Rng rng(3);
  PhasePoly g = rng.poly(), h = rng.poly();
  CHECK(op.apply(g + h) == op.apply(g) + op.apply(h));
  CHECK(op.apply(PhasePoly(0)).is_zero());
}

TEST_CASE("left and right bopp operators implement one-sided star products") {
  Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    PhasePoly A = rng.poly(4, 1, 3), f = rng.poly(4, 1, 3);
    CHECK(bopp_operator(A, BoppSide::Left).apply(f) == star(A, f));
    CHECK(bopp_operator(A, BoppSide::Right).apply(f) == star(f, A));
  }
}

TEST_CASE("sp2 generator operators are exactly the quadratic vector fields") {
  auto gens = sp2_generators();
  const GaussianRational half_i = I * GaussianRational(Rational(1, 2));

  PolyDiffOperator boost;
  boost.add_term({1, 0}, mono(0, 1, 1, half_i));  // (i hbar/2) p dq
  boost.add_term({0, 1}, mono(1, 0, 1, half_i));  // (i hbar/2) q dp
  CHECK(gens[0].op == boost);
  CHECK(gens[0].symbol == (q * q - p * p) * GaussianRational(Rational(1, 4)));

  PolyDiffOperator rotation;
  rotation.add_term({1, 0}, mono(0, 1, 1, -half_i));
  rotation.add_term({0, 1}, mono(1, 0, 1, half_i));
  CHECK(gens[1].op == rotation);

  PolyDiffOperator squeeze;
  squeeze.add_term({1, 0}, mono(1, 0, 1, -half_i));
  squeeze.add_term({0, 1}, mono(0, 1, 1, half_i));
  CHECK(gens[2].op == squeeze);

  CHECK(gens[0].op.apply(q) == mono(0, 1, 1, half_i));  // (i hbar/2) p
  CHECK(gens[1].op.apply(p) == mono(1, 0, 1, half_i));  // (i hbar/2) q
  CHECK(gens[1].op.apply(p) ==
        bracket_apply(BracketKind::MoyalRaw, gens[1].symbol, p));
}

TEST_CASE("quadratic generators act classically up to i*hbar on degree 8") {
  const PhasePoly i_hbar = PhasePoly::hbar() * I;
  for (const auto& gen : sp2_generators()) {
    for (unsigned d = 0; d <= 8; ++d) {
      for (unsigned a = 0; a <= d; ++a) {
        PhasePoly f = mono(a, d - a, 0, 1);
        CHECK(bracket_apply(BracketKind::MoyalRaw, gen.symbol, f) ==
              i_hbar * poisson(gen.symbol, f));
        CHECK(gen.op.apply(f) ==
              bracket_apply(BracketKind::MoyalRaw, gen.symbol, f));
      }
    }
  }
}

TEST_CASE("generator_as_operator extracts the exact bracket action") {
  PhasePoly A1 = (q * q - p * p) * GaussianRational(Rational(1, 4));
  PolyDiffOperator expected;
  expected.add_term({1, 0}, mono(0, 1, 1, I * GaussianRational(Rational(1, 2))));
  expected.add_term({0, 1}, mono(1, 0, 1, I * GaussianRational(Rational(1, 2))));
  CHECK(generator_as_operator(A1) == expected);

  CHECK(generator_as_operator(PhasePoly(5)).is_zero());

  // matching oracle: the operator equals the raw bracket on a monomial basis
  Rng rng(29);
  for (int t = 0; t < 10; ++t) {
    PhasePoly A = rng.poly(4, 1, 3);
    PolyDiffOperator op = generator_as_operator(A);
    for (unsigned d = 0; d <= 5; ++d) {
      for (unsigned a = 0; a <= d; ++a) {
        PhasePoly f = mono(a, d - a, 0, 1);
        CHECK(op.apply(f) == bracket_apply(BracketKind::MoyalRaw, A, f));
      }
    }
  }
}

TEST_CASE("quartic oscillator generator") {
  for (Rational lambda : {Rational(1), Rational(2, 5)}) {
    PhasePoly A = (p * p + q * q) * GaussianRational(Rational(1, 2)) +
                  pow(q, 4) * GaussianRational(lambda / 4);
    PolyDiffOperator expected;
    expected.add_term({1, 0}, mono(0, 1, 1, -I));  // -i hbar p dq
    PhasePoly dp_coeff = mono(1, 0, 1, I) + mono(3, 0, 1, I * GaussianRational(lambda));
    expected.add_term({0, 1}, dp_coeff);  // i hbar (q + lambda q^3) dp
    expected.add_term({0, 3}, mono(1, 0, 3, -I * GaussianRational(lambda / 4)));
    CHECK(generator_as_operator(A) == expected);
  }
}

TEST_CASE("bounded extraction drops higher derivative orders") {
  PhasePoly A = (p * p + q * q) * GaussianRational(Rational(1, 2)) +
                pow(q, 4) * GaussianRational(Rational(1, 4));
  PolyDiffOperator full = generator_as_operator(A);
  PolyDiffOperator bounded = generator_as_operator(A, 1, 1);
  CHECK(full.terms().size() == 3);
  CHECK(bounded.terms().size() == 2);  // dp^3 term dropped
  CHECK(generator_as_operator(A, 3, 3) == full);
}
