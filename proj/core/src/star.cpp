#include "moyal/star.hpp"

#include "moyal/diff_operator.hpp"

#include <vector>

namespace moyal {

namespace {

// table[a][b] = dq^a dp^b f for a + b <= depth
std::vector<std::vector<PhasePoly>> derivative_table(const PhasePoly& f,
                                                     unsigned depth) {
  std::vector<std::vector<PhasePoly>> table(depth + 1);
  for (unsigned a = 0; a <= depth; ++a) {
    table[a].resize(depth + 1 - a);
    for (unsigned b = 0; b + a <= depth; ++b) {
      if (a == 0 && b == 0) {
        table[a][b] = f;
      } else if (b == 0) {
        table[a][b] = diff(table[a - 1][0], Var::Q);
      } else {
        table[a][b] = diff(table[a][b - 1], Var::P);
      }
    }
  }
  return table;
}

Rational binomial(unsigned n, unsigned k) {
  Rational out(1);
  for (unsigned j = 0; j < k; ++j) {
    out *= Rational(n - j, j + 1);
  }
  return out;
}

}  // namespace

PhasePoly star(const PhasePoly& f, const PhasePoly& g) {
  const unsigned kmax = std::min(f.degree_qp(), g.degree_qp());
  auto df = derivative_table(f, kmax);
  auto dg = derivative_table(g, kmax);

  const GaussianRational i_half(Rational(0), Rational(1, 2));
  PhasePoly out;
  GaussianRational factor(1);  // (i/2)^k / k!, hbar^k applied separately
  for (unsigned k = 0; k <= kmax; ++k) {
    if (k > 0) {
      factor *= i_half;
      factor /= GaussianRational(static_cast<int>(k));
    }
    PhasePoly level;
    for (unsigned j = 0; j <= k; ++j) {
      PhasePoly prod = df[k - j][j] * dg[j][k - j];
      GaussianRational c(binomial(k, j));
      if (j % 2 == 1) c = -c;
      prod *= c;
      level += prod;
    }
    level *= factor;
    out += shift_hbar(level, k);
  }
  return out;
}

PhasePoly star_bopp(const PhasePoly& f, const PhasePoly& g) {
  return bopp_operator(f, BoppSide::Left).apply(g);
}

PhasePoly poisson(const PhasePoly& f, const PhasePoly& g) {
  return diff(f, Var::Q) * diff(g, Var::P) - diff(f, Var::P) * diff(g, Var::Q);
}

PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g) {
  return star(f, g) - star(g, f);
}

PhasePoly cross(const PhasePoly& f, const PhasePoly& g) {
  PhasePoly out = poisson(f, g);
  out *= GaussianRational(Rational(1, 2));
  return out;
}

std::array<PhasePoly, 3> cross_nonassoc_witness() {
  // (q^2 x p^2) x (q p) = 0 while q^2 x (p^2 x (q p)) = -2 q p.
  PhasePoly q = PhasePoly::q();
  PhasePoly p = PhasePoly::p();
  return {q * q, p * p, q * p};
}

}  // namespace moyal
