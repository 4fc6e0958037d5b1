#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/kicked.hpp"
#include "moyal/random.hpp"

#include <cmath>
#include <stdexcept>

using namespace moyal;

namespace {
const PhasePoly q = PhasePoly::q();
const PhasePoly p = PhasePoly::p();
const PhasePoly hb = PhasePoly::hbar();

PhasePoly quartic() { return pow(q, 4) * GaussianRational(Rational(1, 4)); }
PhasePoly cubic() { return pow(q, 3) * GaussianRational(Rational(1, 3)); }
PhasePoly quintic() { return pow(q, 5) * GaussianRational(Rational(1, 5)); }

// -(lambda hbar^2 / 4) V'''(q - T p):  the p^3 one-step defect
PhasePoly p3_defect(const KickedSystem& sys) {
  PhasePoly third = diff(diff(diff(sys.potential(), Var::Q), Var::Q), Var::Q);
  PhasePoly q_step = q - GaussianRational(sys.period()) * p;
  PhasePoly out = subst(third, q_step, PhasePoly(0));
  out *= GaussianRational(-sys.lambda() / 4);
  return shift_hbar(out, 2);
}
}  // namespace

TEST_CASE("potential validation") {
  CHECK_THROWS_AS(KickedSystem(q * p, Rational(1), Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(KickedSystem(q + hb, Rational(1), Rational(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      KickedSystem(q * GaussianRational(Rational(0), Rational(1)), Rational(1),
                   Rational(1)),
      std::invalid_argument);
  KickedSystem ok(quartic(), Rational(3, 2), Rational(2, 3));
  CHECK(ok.kappa() == Rational(1));
  CHECK(ok.potential_derivative() == pow(q, 3));
}

TEST_CASE("classical step and trajectories") {
  KickedSystem sys(quartic(), Rational(1), Rational(1));
  PhasePoint next = classical_step_point(sys, PhasePoint{1.0, 1.0, 0.0});
  CHECK(next.q == 0.0);  // V'(0) = 0
  CHECK(next.p == 1.0);

  KickedSystem drift(PhasePoly(0), Rational(0), Rational(1));
  auto free = trajectory(drift, PhasePoint{0.0, 1.0, 0.0}, 2);
  REQUIRE(free.size() == 3);
  CHECK(free[1].q == -1.0);
  CHECK(free[2].q == -2.0);
  CHECK(free[2].p == 1.0);

  KickedSystem pure_kick(cubic(), Rational(2), Rational(0));
  PhasePoint kicked = classical_step_point(pure_kick, PhasePoint{3.0, 1.0, 0.0});
  CHECK(kicked.q == 3.0);
  CHECK(kicked.p == 19.0);  // p + 2 * 3^2

  auto only_start = trajectory(sys, PhasePoint{2.0, 5.0, 0.0}, 0);
  REQUIRE(only_start.size() == 1);
  auto one = trajectory(sys, PhasePoint{1.0, 1.0, 0.0}, 1);
  CHECK(one[1].q == next.q);
  CHECK(one[1].p == next.p);
}

TEST_CASE("exact-rational and float trajectories agree on a bounded orbit") {
  KickedSystem sys(q * q * GaussianRational(Rational(1, 2)), Rational(1, 10),
                   Rational(1, 10));
  auto exact = trajectory(sys, ExactPhasePoint{Rational(1, 2), Rational(1, 3),
                                               Rational(0)}, 50);
  auto approx = trajectory(sys, PhasePoint{0.5, 1.0 / 3.0, 0.0}, 50);
  for (std::size_t k = 0; k < exact.size(); ++k) {
    double eq = rational_to_double(exact[k].q);
    double ep = rational_to_double(exact[k].p);
    CHECK(std::abs(approx[k].q - eq) / std::max(1.0, std::abs(eq)) < 1e-9);
    CHECK(std::abs(approx[k].p - ep) / std::max(1.0, std::abs(ep)) < 1e-9);
  }
}

TEST_CASE("one-step evolution of the coordinates") {
  for (const PhasePoly& V : {cubic(), quartic(), quintic()}) {
    KickedSystem sys(V, Rational(3, 2), Rational(2, 3));
    PhasePoly q_step = q - GaussianRational(Rational(2, 3)) * p;
    PhasePoly p_step =
        p + GaussianRational(Rational(3, 2)) *
                subst(diff(V, Var::Q), q_step, PhasePoly(0));
    CHECK(quantum_step_observable(sys, q) == q_step);
    CHECK(quantum_step_observable(sys, p) == p_step);
    CHECK(classical_step_observable(sys, q) == q_step);
    CHECK(classical_step_observable(sys, p) == p_step);
    CHECK(quantum_step_observable(sys, PhasePoly(1)) == PhasePoly(1));
    CHECK(classical_step_observable(sys, p * p) == p_step * p_step);
  }
}

TEST_CASE("low-degree observables evolve identically") {
  KickedSystem sys(quartic(), Rational(2), Rational(1, 2));
  for (const PhasePoly& f : {PhasePoly(1), q, p, q * q, q * p, p * p,
                             q + p * p * GaussianRational(Rational(1, 3))}) {
    CHECK(quantum_classical_defect(sys, f).is_zero());
  }
}

TEST_CASE("p^3 q defect factors through the p^3 defect") {
  for (const PhasePoly& V : {cubic(), quartic(), quintic()}) {
    KickedSystem sys(V, Rational(3, 2), Rational(2, 3));
    PhasePoly q_step = q - GaussianRational(sys.period()) * p;
    PhasePoly d3 = quantum_classical_defect(sys, pow(p, 3));
    CHECK(d3 == p3_defect(sys));
    PhasePoly d = quantum_classical_defect(sys, pow(p, 3) * q);
    CHECK(d == d3 * q_step);
    CHECK(!d.is_zero());
    CHECK(d.min_hbar_power() == 2);
  }
}

TEST_CASE("frozen defect values for the three test potentials") {
  // lambda = 1, T = 1: q_step = q - p
  PhasePoly q_step = q - p;
  {
    KickedSystem sys(cubic(), Rational(1), Rational(1));
    CHECK(quantum_classical_defect(sys, pow(p, 3) * q) ==
          shift_hbar(q_step * GaussianRational(Rational(-1, 2)), 2));
  }
  {
    KickedSystem sys(quartic(), Rational(1), Rational(1));
    CHECK(quantum_classical_defect(sys, pow(p, 3) * q) ==
          shift_hbar(q_step * q_step * GaussianRational(Rational(-3, 2)), 2));
  }
  {
    KickedSystem sys(quintic(), Rational(1), Rational(1));
    CHECK(quantum_classical_defect(sys, pow(p, 3) * q) ==
          shift_hbar(q_step * q_step * q_step * GaussianRational(-3), 2));
  }
}

TEST_CASE("gauge transformation defect") {
  const Rational a(2, 7);
  for (const PhasePoly& V : {cubic(), quartic(), quintic()}) {
    KickedSystem sys(V, Rational(3, 2), Rational(2, 3));
    CHECK(gauge_defect(sys, a) == p3_defect(sys) * GaussianRational(a));
    CHECK(gauge_defect(sys, Rational(0)).is_zero());
  }
  // V = q^4/4: -(3/2) a lambda hbar^2 (q - T p)
  KickedSystem sys(quartic(), Rational(5), Rational(1, 5));
  PhasePoly expected = (q - GaussianRational(Rational(1, 5)) * p) *
                       GaussianRational(Rational(-3, 2) * a * Rational(5));
  CHECK(gauge_defect(sys, a) == shift_hbar(expected, 2));
}

TEST_CASE("defect hbar order is at least two") {
  Rng rng(71);
  for (const PhasePoly& V : {cubic(), quartic()}) {
    KickedSystem sys(V, Rational(3, 2), Rational(2, 3));
    for (int t = 0; t < 5; ++t) {
      PhasePoly f = rng.poly(5, 0, 3);
      PhasePoly d = quantum_classical_defect(sys, f);
      if (!d.is_zero()) CHECK(d.min_hbar_power() >= 2);
    }
  }
}

TEST_CASE("the defect does not reduce to the product T*lambda") {
  auto defect = [](Rational lambda, Rational period) {
    KickedSystem sys(quartic(), std::move(lambda), std::move(period));
    return quantum_classical_defect(sys, pow(p, 3) * q);
  };
  CHECK(defect(Rational(1), Rational(2)) != defect(Rational(2), Rational(1)));
  CHECK(defect(Rational(1, 2), Rational(3)) != defect(Rational(3, 2), Rational(1)));
  // the classical step itself does reduce: p~ = T p turns (lambda, T) into kappa
  KickedSystem a(quartic(), Rational(1), Rational(2));
  KickedSystem b(quartic(), Rational(2), Rational(1));
  PhasePoly scaled_a = subst(classical_step_observable(a, pow(p, 3) * q), q,
                             p * GaussianRational(Rational(1, 2)));
  PhasePoly scaled_b = subst(classical_step_observable(b, pow(p, 3) * q), q, p);
  // after p -> p~/T both classical maps depend on kappa = 2 only
  CHECK(subst(scaled_a, q, p) == subst(scaled_b, q, p));
}
