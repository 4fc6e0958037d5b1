#pragma once

#include "moyal/point.hpp"
#include "moyal/poly.hpp"
#include "moyal/rational.hpp"

#include <vector>

namespace moyal {

/// Periodically kicked Hamiltonian p^2/2 + lambda V(q) delta_T(t): a free
/// drift of duration T alternating with an impulsive kick of strength lambda.
/// V must be a polynomial in q alone with real coefficients.
class KickedSystem {
 public:
  KickedSystem(PhasePoly potential, Rational lambda, Rational period);

  const PhasePoly& potential() const { return potential_; }
  const PhasePoly& potential_derivative() const { return derivative_; }
  const Rational& lambda() const { return lambda_; }
  const Rational& period() const { return period_; }
  Rational kappa() const { return period_ * lambda_; }  // read-only composite

 private:
  PhasePoly potential_;
  PhasePoly derivative_;
  Rational lambda_;
  Rational period_;
};

// One step of the map: q' = q - T p, then p' = p + lambda V'(q') (the kick
// sees the updated coordinate).
PhasePoint classical_step_point(const KickedSystem& sys, const PhasePoint& pt);
ExactPhasePoint classical_step_point(const KickedSystem& sys,
                                     const ExactPhasePoint& pt);

// n+1 points including the start.
std::vector<PhasePoint> trajectory(const KickedSystem& sys, PhasePoint start,
                                   int steps);
std::vector<ExactPhasePoint> trajectory(const KickedSystem& sys,
                                        ExactPhasePoint start, int steps);

// One-step Heisenberg evolution of an observable: the exact kick flow
// followed by the exact drift flow. Both terminate on polynomials (the kick
// generator lowers p-degree, the drift generator lowers q-degree).
PhasePoly quantum_step_observable(const KickedSystem& sys, const PhasePoly& f);

// The covariant route: f(q - Tp, p + lambda V'(q - Tp)).
PhasePoly classical_step_observable(const KickedSystem& sys, const PhasePoly& f);

// quantum minus classical; zero on observables of degree <= 2, and the
// lowest hbar power of any nonzero defect is >= 2.
PhasePoly quantum_classical_defect(const KickedSystem& sys, const PhasePoly& f);

// One-step defect of the transformed coordinate Q = q + a p^3; equals
// a * quantum_classical_defect(sys, p^3).
PhasePoly gauge_defect(const KickedSystem& sys, const Rational& a);

}  // namespace moyal
