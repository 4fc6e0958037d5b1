#pragma once

#include "moyal/rational.hpp"

#include <compare>
#include <complex>
#include <map>

namespace moyal {

enum class Var { Q, P };

// Exponents of one sparse term q^q_pow * p^p_pow * hbar^hbar_pow.
struct Monomial {
  unsigned q_pow = 0;
  unsigned p_pow = 0;
  unsigned hbar_pow = 0;

  unsigned degree_qp() const { return q_pow + p_pow; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical term order: descending (q,p)-degree, then descending q-power,
// then ascending hbar-power. Used for storage, display and serialization.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree_qp() != b.degree_qp()) return a.degree_qp() > b.degree_qp();
    if (a.q_pow != b.q_pow) return a.q_pow > b.q_pow;
    return a.hbar_pow < b.hbar_pow;
  }
};

/// Sparse polynomial in q, p and a formal hbar over GaussianRational.
///
/// Invariant: no stored zero coefficients, so two polynomials are equal iff
/// their term maps are identical. All operations are pure; values are safe
/// to share across threads.
class PhasePoly {
 public:
  using TermMap = std::map<Monomial, GaussianRational, MonomialOrder>;

  PhasePoly() = default;  // zero
  PhasePoly(int constant) : PhasePoly(GaussianRational(constant)) {}  // NOLINT
  PhasePoly(GaussianRational constant);                               // NOLINT

  static PhasePoly variable(Var v);
  static PhasePoly q() { return variable(Var::Q); }
  static PhasePoly p() { return variable(Var::P); }
  static PhasePoly hbar();
  static PhasePoly term(const Monomial& m, GaussianRational coeff);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GaussianRational coeff(const Monomial& m) const;

  // Degrees are over the stored terms; all return 0 for the zero polynomial.
  unsigned degree_qp() const;
  unsigned degree(Var v) const;
  unsigned degree_hbar() const;
  unsigned min_hbar_power() const;  // 0 for the zero polynomial
  bool has_real_coefficients() const;

  // Adds c at monomial m, erasing the entry if the sum cancels.
  void add_term(const Monomial& m, const GaussianRational& c);

  PhasePoly operator-() const;
  PhasePoly& operator+=(const PhasePoly& o);
  PhasePoly& operator-=(const PhasePoly& o);
  PhasePoly& operator*=(const PhasePoly& o);
  PhasePoly& operator*=(const GaussianRational& s);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const GaussianRational& s) { return a *= s; }
  friend PhasePoly operator*(const GaussianRational& s, PhasePoly a) { return a *= s; }

  friend bool operator==(const PhasePoly&, const PhasePoly&) = default;

 private:
  TermMap terms_;
};

PhasePoly diff(const PhasePoly& f, Var v);
PhasePoly pow(const PhasePoly& f, unsigned k);

// f with q -> q_image and p -> p_image, expanded with ordinary products;
// hbar is left untouched.
PhasePoly subst(const PhasePoly& f, const PhasePoly& q_image, const PhasePoly& p_image);

// Multiplies by the monomial hbar^k.
PhasePoly shift_hbar(const PhasePoly& f, unsigned k);

// Exact division by i*hbar. Every term must carry hbar_pow >= 1; otherwise
// the input is not a Moyal-bracket value and NotDivisibleError is thrown.
PhasePoly div_i_hbar(const PhasePoly& f);

GaussianRational eval(const PhasePoly& f, const Rational& q, const Rational& p,
                      const Rational& hbar);
std::complex<double> eval(const PhasePoly& f, double q, double p, double hbar);

}  // namespace moyal
