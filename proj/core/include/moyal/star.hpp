#pragma once

#include "moyal/poly.hpp"

#include <array>

namespace moyal {

// Sign convention throughout: {q,p} = +1, so star(p, q) = p*q - i*hbar/2.

/// Star product by the terminating bidifferential series
///   sum_k (i hbar/2)^k/k! sum_j C(k,j) (-1)^j (dq^{k-j} dp^j f)(dp^{k-j} dq^j g).
/// The series stops at k = min(deg f, deg g); exact on polynomials.
PhasePoly star(const PhasePoly& f, const PhasePoly& g);

/// Independent route to the same product: f expanded over the left Bopp pair
/// q + (i hbar/2) d_p, p - (i hbar/2) d_q acting on g (derivatives act on g
/// only, coefficients stay left).
PhasePoly star_bopp(const PhasePoly& f, const PhasePoly& g);

// {f,g} = (dq f)(dp g) - (dp f)(dq g)
PhasePoly poisson(const PhasePoly& f, const PhasePoly& g);

// star(f,g) - star(g,f); equals i*hbar*{f,g} plus odd hbar >= 3 corrections.
PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g);

// Non-associative half-bracket (1/2)[(dq f)(dp g) - (dp f)(dq g)]; its
// antisymmetrization is the Poisson bracket.
PhasePoly cross(const PhasePoly& f, const PhasePoly& g);

// Fixed regression triple (f, g, h) with (f x g) x h != f x (g x h); the
// same triple associates under star.
std::array<PhasePoly, 3> cross_nonassoc_witness();

}  // namespace moyal
