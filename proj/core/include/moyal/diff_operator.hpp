#pragma once

#include "moyal/poly.hpp"

#include <map>

namespace moyal {

// Derivative orders of one operator term coeff * dq^dq_order * dp^dp_order.
struct DerivOrder {
  unsigned dq = 0;
  unsigned dp = 0;
  friend bool operator==(const DerivOrder&, const DerivOrder&) = default;
};

// Ascending total order, dq-heavy terms first within a level.
struct DerivOrderLess {
  bool operator()(const DerivOrder& a, const DerivOrder& b) const {
    if (a.dq + a.dp != b.dq + b.dp) return a.dq + a.dp < b.dq + b.dp;
    return a.dq > b.dq;
  }
};

/// Finite sum of terms (PhasePoly coefficient) x dq^a dp^b. Application is
/// linear and agrees with repeated diff; no zero coefficients are stored.
class PolyDiffOperator {
 public:
  using TermMap = std::map<DerivOrder, PhasePoly, DerivOrderLess>;

  PolyDiffOperator() = default;

  void add_term(const DerivOrder& d, const PhasePoly& coeff);
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PhasePoly apply(const PhasePoly& f) const;

  PolyDiffOperator& operator+=(const PolyDiffOperator& o);
  PolyDiffOperator& operator-=(const PolyDiffOperator& o);
  PolyDiffOperator& operator*=(const GaussianRational& s);

  friend PolyDiffOperator operator+(PolyDiffOperator a, const PolyDiffOperator& b) {
    return a += b;
  }
  friend PolyDiffOperator operator-(PolyDiffOperator a, const PolyDiffOperator& b) {
    return a -= b;
  }
  friend bool operator==(const PolyDiffOperator&, const PolyDiffOperator&) = default;

 private:
  TermMap terms_;
};

enum class BoppSide { Left, Right };

// A as a normal-ordered differential operator: left side substitutes
// q -> q + (i hbar/2) d_p, p -> p - (i hbar/2) d_q (so the operator applied
// to g equals star(A, g)); the right side flips both shift signs and yields
// g -> star(g, A).
PolyDiffOperator bopp_operator(const PhasePoly& A, BoppSide side);

// Explicit form of the Moyal-bracket action f -> moyal_bracket(A, f); exact
// for polynomial A (the Bopp-shift difference of the two sides).
PolyDiffOperator generator_as_operator(const PhasePoly& A);

// Bounded variant; terms with dq > max_q_order or dp > max_p_order are
// dropped. Exact whenever the bounds are at least deg A.
PolyDiffOperator generator_as_operator(const PhasePoly& A, unsigned max_q_order,
                                       unsigned max_p_order);

}  // namespace moyal
