#include "moyal/poly.hpp"

#include "moyal/errors.hpp"

#include <algorithm>
#include <vector>

namespace moyal {

PhasePoly::PhasePoly(GaussianRational constant) {
  add_term(Monomial{}, constant);
}

PhasePoly PhasePoly::variable(Var v) {
  Monomial m;
  if (v == Var::Q) {
    m.q_pow = 1;
  } else {
    m.p_pow = 1;
  }
  return term(m, 1);
}

PhasePoly PhasePoly::hbar() {
  return term(Monomial{0, 0, 1}, 1);
}

PhasePoly PhasePoly::term(const Monomial& m, GaussianRational coeff) {
  PhasePoly f;
  f.add_term(m, coeff);
  return f;
}

GaussianRational PhasePoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

unsigned PhasePoly::degree_qp() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_qp());
  return d;
}

unsigned PhasePoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    d = std::max(d, v == Var::Q ? m.q_pow : m.p_pow);
  }
  return d;
}

unsigned PhasePoly::degree_hbar() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.hbar_pow);
  return d;
}

unsigned PhasePoly::min_hbar_power() const {
  unsigned d = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    d = first ? m.hbar_pow : std::min(d, m.hbar_pow);
    first = false;
  }
  return d;
}

bool PhasePoly::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_real(); });
}

void PhasePoly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  PhasePoly out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m{ma.q_pow + mb.q_pow, ma.p_pow + mb.p_pow,
                 ma.hbar_pow + mb.hbar_pow};
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

PhasePoly& PhasePoly::operator*=(const PhasePoly& o) {
  *this = *this * o;
  return *this;
}

PhasePoly& PhasePoly::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

PhasePoly diff(const PhasePoly& f, Var v) {
  PhasePoly out;
  for (const auto& [m, c] : f.terms()) {
    unsigned e = v == Var::Q ? m.q_pow : m.p_pow;
    if (e == 0) continue;
    Monomial d = m;
    if (v == Var::Q) {
      d.q_pow -= 1;
    } else {
      d.p_pow -= 1;
    }
    out.add_term(d, c * GaussianRational(static_cast<int>(e)));
  }
  return out;
}

PhasePoly pow(const PhasePoly& f, unsigned k) {
  PhasePoly out(1);
  for (unsigned i = 0; i < k; ++i) out *= f;
  return out;
}

PhasePoly subst(const PhasePoly& f, const PhasePoly& q_image,
                const PhasePoly& p_image) {
  // Powers of the images are cached up to the degrees actually used.
  std::vector<PhasePoly> q_pows{PhasePoly(1)};
  std::vector<PhasePoly> p_pows{PhasePoly(1)};
  auto power = [](std::vector<PhasePoly>& cache, const PhasePoly& base,
                  unsigned k) -> const PhasePoly& {
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  PhasePoly out;
  for (const auto& [m, c] : f.terms()) {
    PhasePoly term = power(q_pows, q_image, m.q_pow) *
                     power(p_pows, p_image, m.p_pow);
    term *= c;
    out += shift_hbar(term, m.hbar_pow);
  }
  return out;
}

PhasePoly shift_hbar(const PhasePoly& f, unsigned k) {
  if (k == 0) return f;
  PhasePoly out;
  for (const auto& [m, c] : f.terms()) {
    out.add_term(Monomial{m.q_pow, m.p_pow, m.hbar_pow + k}, c);
  }
  return out;
}

PhasePoly div_i_hbar(const PhasePoly& f) {
  // 1/i = -i, so each coefficient picks up a factor -i.
  const GaussianRational minus_i(Rational(0), Rational(-1));
  PhasePoly out;
  for (const auto& [m, c] : f.terms()) {
    if (m.hbar_pow == 0) {
      throw NotDivisibleError("term with hbar power 0 is not divisible by i*hbar");
    }
    out.add_term(Monomial{m.q_pow, m.p_pow, m.hbar_pow - 1}, c * minus_i);
  }
  return out;
}

namespace {

template <typename Num>
Num int_pow(const Num& base, unsigned e) {
  Num out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

GaussianRational eval(const PhasePoly& f, const Rational& q, const Rational& p,
                      const Rational& hbar) {
  GaussianRational out;
  for (const auto& [m, c] : f.terms()) {
    Rational factor = int_pow(q, m.q_pow) * int_pow(p, m.p_pow) *
                      int_pow(hbar, m.hbar_pow);
    out += c * GaussianRational(factor);
  }
  return out;
}

std::complex<double> eval(const PhasePoly& f, double q, double p, double hbar) {
  std::complex<double> out;
  for (const auto& [m, c] : f.terms()) {
    double factor = int_pow(q, m.q_pow) * int_pow(p, m.p_pow) *
                    int_pow(hbar, m.hbar_pow);
    out += c.to_complex() * factor;
  }
  return out;
}

}  // namespace moyal
