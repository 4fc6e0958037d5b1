#include "moyal/star_exp.hpp"

#include "moyal/flows.hpp"
#include "moyal/star.hpp"

#include <vector>

namespace moyal {

PhasePoly star_power(const PhasePoly& A, unsigned k) {
  PhasePoly out(1);
  for (unsigned i = 0; i < k; ++i) out = star(out, A);
  return out;
}

namespace {

// element k = star_power(A,k)/k!
std::vector<PhasePoly> star_exp_coefficients(const PhasePoly& A, int order) {
  std::vector<PhasePoly> out{PhasePoly(1)};
  for (int k = 1; k <= order; ++k) {
    out.push_back(star(out.back(), A) * GaussianRational(Rational(1, k)));
  }
  return out;
}

// coefficient of c^k in e_*^{-cA} * f * e_*^{cA}
std::vector<PhasePoly> conjugate_coefficients(const PhasePoly& A,
                                              const PhasePoly& f, int order) {
  std::vector<PhasePoly> u = star_exp_coefficients(A, order);
  std::vector<PhasePoly> out(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) {
    PhasePoly left = star(u[i], f);
    if (i % 2 == 1) left = -left;
    for (int j = 0; i + j <= order; ++j) {
      out[i + j] += star(left, u[j]);
    }
  }
  return out;
}

}  // namespace

PhasePoly star_exponential_series(const PhasePoly& A, const GaussianRational& c,
                                  int order) {
  return series_evaluate(star_exp_coefficients(A, order), c);
}

PhasePoly star_conjugate(const PhasePoly& A, const GaussianRational& c,
                         const PhasePoly& f, int order) {
  return series_evaluate(conjugate_coefficients(A, f, order), c);
}

PhasePoly mlt_equivalence_defect(const PhasePoly& A, const GaussianRational& c,
                                 const PhasePoly& f, int order) {
  std::vector<PhasePoly> conj = conjugate_coefficients(A, f, order);
  std::vector<PhasePoly> flowed =
      flow_series(BracketKind::MoyalRaw, A, f, order);
  flowed.resize(conj.size());
  // e_*^{-cA} * f * e_*^{cA} = sum (-c)^k ad_A^k f / k!, so the bracket-flow
  // branch enters with alternating sign.
  for (std::size_t k = 0; k < conj.size(); ++k) {
    if (k % 2 == 1) {
      conj[k] += flowed[k];
    } else {
      conj[k] -= flowed[k];
    }
  }
  return series_evaluate(conj, c);
}

}  // namespace moyal
