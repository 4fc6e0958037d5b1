#include "moyal/diff_operator.hpp"

namespace moyal {

void PolyDiffOperator::add_term(const DerivOrder& d, const PhasePoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(d, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePoly PolyDiffOperator::apply(const PhasePoly& f) const {
  PhasePoly out;
  for (const auto& [d, coeff] : terms_) {
    PhasePoly g = f;
    for (unsigned i = 0; i < d.dq && !g.is_zero(); ++i) g = diff(g, Var::Q);
    for (unsigned i = 0; i < d.dp && !g.is_zero(); ++i) g = diff(g, Var::P);
    out += coeff * g;
  }
  return out;
}

PolyDiffOperator& PolyDiffOperator::operator+=(const PolyDiffOperator& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator-=(const PolyDiffOperator& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

PolyDiffOperator& PolyDiffOperator::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [d, c] : terms_) c *= s;
  return *this;
}

namespace {

Rational binomial(unsigned n, unsigned k) {
  Rational out(1);
  for (unsigned j = 0; j < k; ++j) out *= Rational(n - j, j + 1);
  return out;
}

// i^e as a GaussianRational
GaussianRational i_power(unsigned e) {
  switch (e % 4) {
    case 0: return {Rational(1), Rational(0)};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {Rational(-1), Rational(0)};
    default: return {Rational(0), Rational(-1)};
  }
}

}  // namespace

PolyDiffOperator bopp_operator(const PhasePoly& A, BoppSide side) {
  // q^a p^b expands over commuting shifts into
  //   sum_{m<=a, n<=b} C(a,m) C(b,n) (s i hbar/2)^m (-s i hbar/2)^n
  //                    q^{a-m} p^{b-n} dp^m dq^n
  // with s = +1 (left) or -1 (right).
  const int s = side == BoppSide::Left ? 1 : -1;
  PolyDiffOperator out;
  for (const auto& [mono, coeff] : A.terms()) {
    for (unsigned m = 0; m <= mono.q_pow; ++m) {
      for (unsigned n = 0; n <= mono.p_pow; ++n) {
        GaussianRational c = coeff;
        c *= GaussianRational(binomial(mono.q_pow, m) * binomial(mono.p_pow, n));
        c *= i_power(m + n);
        c *= GaussianRational(Rational(BigInt((m + n) % 2 == 0 ? 1 : s) *
                                           BigInt(n % 2 == 0 ? 1 : -1),
                                       BigInt(1) << (m + n)));
        Monomial rest{mono.q_pow - m, mono.p_pow - n,
                      mono.hbar_pow + m + n};
        out.add_term(DerivOrder{n, m}, PhasePoly::term(rest, c));
      }
    }
  }
  return out;
}

PolyDiffOperator generator_as_operator(const PhasePoly& A) {
  PolyDiffOperator out = bopp_operator(A, BoppSide::Left);
  out -= bopp_operator(A, BoppSide::Right);
  return out;
}

PolyDiffOperator generator_as_operator(const PhasePoly& A, unsigned max_q_order,
                                       unsigned max_p_order) {
  PolyDiffOperator exact = generator_as_operator(A);
  PolyDiffOperator out;
  for (const auto& [d, c] : exact.terms()) {
    if (d.dq <= max_q_order && d.dp <= max_p_order) out.add_term(d, c);
  }
  return out;
}

}  // namespace moyal
