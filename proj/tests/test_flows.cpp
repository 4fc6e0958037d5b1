#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/errors.hpp"
#include "moyal/flows.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"

using namespace moyal;

namespace {
const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const PhasePoly hb = PhasePoly::hbar();
const GaussianRational I = GaussianRational::i();
const GaussianRational half(Rational(1, 2));

PhasePoly mono(unsigned a, unsigned b, unsigned h, GaussianRational c) {
  return PhasePoly::term(Monomial{a, b, h}, c);
}
}  // namespace

TEST_CASE("bracket_apply selects the right action") {
  PhasePoly drift = p * p * half;
  CHECK(bracket_apply(BracketKind::Classical, drift, q) == -p);
  CHECK(bracket_apply(BracketKind::Classical, drift, q) == poisson(drift, q));

  PhasePoly A1 = (q * q - p * p) * GaussianRational(Rational(1, 4));
  CHECK(bracket_apply(BracketKind::MoyalRaw, A1, q) == mono(0, 1, 1, I * half));

  PhasePoly cubic = pow(q, 3) * GaussianRational(Rational(1, 3));
  CHECK(bracket_apply(BracketKind::MoyalNormalized, cubic, p * p) ==
        q * q * p * GaussianRational(2));
  CHECK(bracket_apply(BracketKind::MoyalNormalized, cubic, p * p) ==
        div_i_hbar(moyal_bracket(cubic, p * p)));
}

TEST_CASE("exact flows of nilpotent generators") {
  PhasePoly drift = p * p * half;
  CHECK(flow(BracketKind::Classical, drift, 1, q, std::nullopt) == q - p);
  CHECK(flow(BracketKind::MoyalNormalized, drift, 1, q, std::nullopt) == q - p);

  PhasePoly cubic = pow(q, 3) * GaussianRational(Rational(1, 3));
  CHECK(flow(BracketKind::MoyalNormalized, cubic, 1, p, std::nullopt) ==
        p + q * q);

  Rng rng(31);
  PhasePoly f = rng.poly();
  CHECK(flow(BracketKind::Classical, rng.poly(), 0, f, std::nullopt) == f);
  CHECK(flow(BracketKind::MoyalRaw, rng.poly(), 0, f, 5) == f);
}

TEST_CASE("non-terminating exact flows fail loudly") {
  CHECK_THROWS_AS(flow(BracketKind::Classical, q * q * p * p, 1, q, std::nullopt),
                  NonTerminatingError);
  try {
    flow(BracketKind::Classical, q * q * p * p, 1, q, std::nullopt, 10);
  } catch (const NonTerminatingError& e) {
    CHECK(e.iterations() == 10);
  }
}

TEST_CASE("transform_coordinates") {
  PhasePoly drift = p * p * half;
  auto [Q1, P1] = transform_coordinates(BracketKind::Classical, drift, 1,
                                        std::nullopt);
  CHECK(Q1 == q - p);
  CHECK(P1 == p);

  auto [Q2, P2] = transform_coordinates(BracketKind::MoyalNormalized,
                                        p * q * half, 1, 3);
  CHECK(Q2 == q * GaussianRational(Rational(29, 48)));
  CHECK(P2 == p * GaussianRational(Rational(79, 48)));

  auto [Q3, P3] = transform_coordinates(
      BracketKind::MoyalNormalized,
      pow(q, 4) * GaussianRational(Rational(1, 4)), 1, std::nullopt);
  CHECK(Q3 == q);
  CHECK(P3 == p + pow(q, 3));
}

TEST_CASE("symplectic defect") {
  CHECK(symplectic_defect(q - p, p, SymplecticKind::Classical).is_zero());
  CHECK(symplectic_defect(q, p + pow(q, 3), SymplecticKind::Quantum).is_zero());
  CHECK(symplectic_defect(q * GaussianRational(2), p * GaussianRational(2),
                          SymplecticKind::Classical) == PhasePoly(3));
}

TEST_CASE("linear symplectic substitution") {
  Rng rng(41);
  PhasePoly f = rng.poly(4, 1, 3);
  CHECK(linear_symplectic_subst(SymplecticMatrix::identity(), f) == f);

  SymplecticMatrix shear(1, 0, -1, 1);  // P = p, Q = q - p
  CHECK(linear_symplectic_subst(shear, p * p) ==
        flow(BracketKind::Classical, p * p * half, 1, p * p, std::nullopt));
  CHECK(linear_symplectic_subst(shear, f) ==
        flow(BracketKind::Classical, p * p * half, 1, f, std::nullopt));
  CHECK(linear_symplectic_subst(shear.inverse(),
                                linear_symplectic_subst(shear, f)) == f);
  CHECK_THROWS_AS(SymplecticMatrix(1, 1, 1, 1), NotSymplecticError);
}

TEST_CASE("classical covariance holds, order by order") {
  Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    PhasePoly G = rng.poly(4, 0, 3, false);
    PhasePoly f = rng.poly(3, 1, 3);
    for (const PhasePoly& d : covariance_defect_series(BracketKind::Classical, G, f, 5)) {
      CHECK(d.is_zero());
    }
  }
  PhasePoly drift = p * p * half;
  CHECK(covariance_defect(BracketKind::Classical, drift, 1, p * p * q,
                          std::nullopt)
            .is_zero());
}

TEST_CASE("quantum covariance holds for quadratic generators") {
  for (const PhasePoly& G : {(p * p + q * q) * half, p * q * half, q * q}) {
    Rng rng(67);
    PhasePoly f = rng.poly(3, 1, 3);
    for (const PhasePoly& d :
         covariance_defect_series(BracketKind::MoyalNormalized, G, f, 8)) {
      CHECK(d.is_zero());
    }
  }
}

TEST_CASE("quantum covariance breaks at hbar^2 for the quartic kick") {
  PhasePoly G = pow(q, 4) * GaussianRational(Rational(1, 4));
  PhasePoly defect = covariance_defect(BracketKind::MoyalNormalized, G, 1,
                                       pow(p, 3), std::nullopt);
  CHECK(defect == mono(1, 0, 2, GaussianRational(Rational(-3, 2))));
  CHECK(defect.min_hbar_power() == 2);
}

TEST_CASE("star covariance") {
  PhasePoly cubic = pow(q, 3) * GaussianRational(Rational(1, 3));
  CHECK(star_covariance_defect(cubic, 1, p, p, std::nullopt).is_zero());
  CHECK(star_covariance_defect(cubic, 0, q, p, 4).is_zero());
  for (const PhasePoly& A : {(p * p + q * q) * half, p * q * half}) {
    for (const PhasePoly& d :
         star_covariance_defect_series(A, q, p * p * q, 6)) {
      CHECK(d.is_zero());
    }
  }
}

TEST_CASE("flows compose additively in the parameter") {
  PhasePoly G = pow(q, 4) * GaussianRational(Rational(1, 4));
  GaussianRational c1(Rational(2, 3)), c2(Rational(-1, 5));
  PhasePoly f = pow(p, 3);
  PhasePoly two = flow(BracketKind::MoyalNormalized, G, c1,
                       flow(BracketKind::MoyalNormalized, G, c2, f, std::nullopt),
                       std::nullopt);
  PhasePoly one = flow(BracketKind::MoyalNormalized, G, c1 + c2, f, std::nullopt);
  CHECK(two == one);
}

TEST_CASE("series utilities truncate consistently") {
  PolySeries a{q, p};           // q + c p
  PolySeries b{p, PhasePoly(1)};  // p + c
  PolySeries ab = series_product(a, b, 1);
  REQUIRE(ab.size() == 2);
  CHECK(ab[0] == q * p);
  CHECK(ab[1] == q + p * p);
  PhasePoly at_two = series_evaluate(ab, 2);
  CHECK(at_two == q * p + (q + p * p) * GaussianRational(2));

  PolySeries qs{q, p};  // Q = q + c p
  PolySeries ps{p};     // P = p
  PolySeries sub = series_substitute(q * q + p, qs, ps, 2);
  REQUIRE(sub.size() == 3);
  CHECK(sub[0] == q * q + p);
  CHECK(sub[1] == q * p * GaussianRational(2));
  CHECK(sub[2] == p * p);
}
