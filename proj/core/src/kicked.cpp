#include "moyal/kicked.hpp"

#include "moyal/flows.hpp"

#include <stdexcept>

namespace moyal {

KickedSystem::KickedSystem(PhasePoly potential, Rational lambda, Rational period)
    : potential_(std::move(potential)),
      lambda_(std::move(lambda)),
      period_(std::move(period)) {
  for (const auto& [m, c] : potential_.terms()) {
    if (m.p_pow != 0 || m.hbar_pow != 0) {
      throw std::invalid_argument("kick potential must depend on q only");
    }
    if (!c.is_real()) {
      throw std::invalid_argument("kick potential must have real coefficients");
    }
  }
  derivative_ = diff(potential_, Var::Q);
}

namespace {

double eval_q_only(const PhasePoly& f, double x) {
  return eval(f, x, 0.0, 0.0).real();
}

Rational eval_q_only(const PhasePoly& f, const Rational& x) {
  return eval(f, x, Rational(0), Rational(0)).re;
}

template <typename Num>
Num to_num(const Rational& r);

template <>
double to_num<double>(const Rational& r) {
  return rational_to_double(r);
}

template <>
Rational to_num<Rational>(const Rational& r) {
  return r;
}

template <typename Num>
PhasePointT<Num> step_impl(const KickedSystem& sys, const PhasePointT<Num>& pt) {
  PhasePointT<Num> out = pt;
  out.q = pt.q - to_num<Num>(sys.period()) * pt.p;
  out.p = pt.p + to_num<Num>(sys.lambda()) *
                     eval_q_only(sys.potential_derivative(), out.q);
  return out;
}

template <typename Num>
std::vector<PhasePointT<Num>> trajectory_impl(const KickedSystem& sys,
                                              PhasePointT<Num> start, int steps) {
  std::vector<PhasePointT<Num>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(std::move(start));
  for (int i = 0; i < steps; ++i) {
    out.push_back(step_impl(sys, out.back()));
  }
  return out;
}

}  // namespace

PhasePoint classical_step_point(const KickedSystem& sys, const PhasePoint& pt) {
  return step_impl<double>(sys, pt);
}

ExactPhasePoint classical_step_point(const KickedSystem& sys,
                                     const ExactPhasePoint& pt) {
  return step_impl<Rational>(sys, pt);
}

std::vector<PhasePoint> trajectory(const KickedSystem& sys, PhasePoint start,
                                   int steps) {
  return trajectory_impl(sys, start, steps);
}

std::vector<ExactPhasePoint> trajectory(const KickedSystem& sys,
                                        ExactPhasePoint start, int steps) {
  return trajectory_impl(sys, start, steps);
}

PhasePoly quantum_step_observable(const KickedSystem& sys, const PhasePoly& f) {
  PhasePoly p = PhasePoly::p();
  PhasePoly drift_gen = p * p * GaussianRational(Rational(1, 2));
  // Termination bounds: the kick strictly lowers p-degree, the drift strictly
  // lowers q-degree, so caps derived from the operand degrees always suffice.
  int kick_cap = static_cast<int>(f.degree(Var::P)) + 2;
  PhasePoly kicked = flow(BracketKind::MoyalNormalized, sys.potential(),
                          GaussianRational(sys.lambda()), f, std::nullopt,
                          std::max(kDefaultFlowCap, kick_cap));
  int drift_cap = static_cast<int>(kicked.degree(Var::Q)) + 2;
  return flow(BracketKind::MoyalNormalized, drift_gen,
              GaussianRational(sys.period()), kicked, std::nullopt,
              std::max(kDefaultFlowCap, drift_cap));
}

PhasePoly classical_step_observable(const KickedSystem& sys, const PhasePoly& f) {
  PhasePoly q = PhasePoly::q();
  PhasePoly p = PhasePoly::p();
  PhasePoly q_step = q - GaussianRational(sys.period()) * p;
  PhasePoly p_step =
      p + GaussianRational(sys.lambda()) *
              subst(sys.potential_derivative(), q_step, PhasePoly(0));
  return subst(f, q_step, p_step);
}

PhasePoly quantum_classical_defect(const KickedSystem& sys, const PhasePoly& f) {
  return quantum_step_observable(sys, f) - classical_step_observable(sys, f);
}

PhasePoly gauge_defect(const KickedSystem& sys, const Rational& a) {
  PhasePoly p3 = pow(PhasePoly::p(), 3);
  return quantum_classical_defect(sys, p3) * GaussianRational(a);
}

}  // namespace moyal
