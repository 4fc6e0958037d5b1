#pragma once

#include "moyal/poly.hpp"

namespace moyal {

// A * A * ... * A with k star factors; k = 0 gives 1. Associativity makes
// the grouping irrelevant.
PhasePoly star_power(const PhasePoly& A, unsigned k);

// sum_{k<=order} c^k/k! star_power(A, k). Callers pass c = i*gamma for a
// unitary exponential.
PhasePoly star_exponential_series(const PhasePoly& A, const GaussianRational& c,
                                  int order);

// star_exponential_series(A,-c) * f * star_exponential_series(A,c) under the
// star product, truncated to total power <= order in c after expansion.
PhasePoly star_conjugate(const PhasePoly& A, const GaussianRational& c,
                         const PhasePoly& f, int order);

// star_conjugate minus the nested-Moyal-bracket flow of the matching
// parameter (the conjugation by e_*^{cA} equals the bracket flow at -c);
// compared power by power of c, zero certifies the two quantization routes
// coincide.
PhasePoly mlt_equivalence_defect(const PhasePoly& A, const GaussianRational& c,
                                 const PhasePoly& f, int order);

}  // namespace moyal
