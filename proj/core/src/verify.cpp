#include "moyal/verify.hpp"

#include "moyal/errors.hpp"
#include "moyal/flows.hpp"
#include "moyal/json_io.hpp"
#include "moyal/kicked.hpp"
#include "moyal/parse.hpp"
#include "moyal/random.hpp"
#include "moyal/star.hpp"
#include "moyal/star_exp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace moyal {

bool VerifyReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const VerifyCase& c) { return c.pass; });
}

namespace {

PhasePoly mono(unsigned a, unsigned b, unsigned h, GaussianRational c) {
  return PhasePoly::term(Monomial{a, b, h}, c);
}

PhasePoly drop_hbar_terms(const PhasePoly& f) {
  PhasePoly out;
  for (const auto& [m, c] : f.terms()) {
    if (m.hbar_pow == 0) out.add_term(m, c);
  }
  return out;
}

const GaussianRational kI = GaussianRational::i();

// Accumulates cases; a case fails on its first counterexample.
class Suite {
 public:
  explicit Suite(std::vector<VerifyCase>& out, const std::string& prefix)
      : out_(out), prefix_(prefix) {}

  // body returns an empty string on success, a counterexample otherwise
  void run(const std::string& name, const std::function<std::string()>& body) {
    VerifyCase c;
    c.name = prefix_ + "/" + name;
    std::string ce = body();
    c.pass = ce.empty();
    c.counterexample = std::move(ce);
    out_.push_back(std::move(c));
  }

 private:
  std::vector<VerifyCase>& out_;
  std::string prefix_;
};

std::string mismatch(const std::string& label, const PhasePoly& lhs,
                     const PhasePoly& rhs) {
  return label + ": lhs = " + format_poly(lhs) + "; rhs = " + format_poly(rhs);
}

// ---------------------------------------------------------------------------
// algebra: polynomial ring, star products, brackets, parser, JSON
// ---------------------------------------------------------------------------

void run_algebra(Rng& rng, std::vector<VerifyCase>& out) {
  Suite suite(out, "algebra");

  suite.run("poly_ring_laws", [&]() -> std::string {
    for (int t = 0; t < 30; ++t) {
      PhasePoly f = rng.poly(), g = rng.poly(), h = rng.poly();
      if ((f * g) * h != f * (g * h)) return mismatch("associativity", (f * g) * h, f * (g * h));
      if (f * g != g * f) return mismatch("commutativity", f * g, g * f);
      if (f + PhasePoly(0) != f) return "additive identity failed for f = " + format_poly(f);
      if (f * PhasePoly(1) != f) return "multiplicative identity failed for f = " + format_poly(f);
    }
    return {};
  });

  suite.run("poly_diff_leibniz", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly(), g = rng.poly();
      for (Var v : {Var::Q, Var::P}) {
        PhasePoly lhs = diff(f * g, v);
        PhasePoly rhs = diff(f, v) * g + f * diff(g, v);
        if (lhs != rhs) return mismatch("Leibniz", lhs, rhs);
      }
    }
    return {};
  });

  suite.run("poly_div_i_hbar_roundtrip", [&]() -> std::string {
    const PhasePoly i_hbar = mono(0, 0, 1, kI);
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly();
      PhasePoly g = f * i_hbar;
      if (div_i_hbar(g) != f) return mismatch("div", div_i_hbar(g), f);
      if (!g.is_zero() && div_i_hbar(g) * i_hbar != g) {
        return mismatch("mul-back", div_i_hbar(g) * i_hbar, g);
      }
    }
    return {};
  });

  suite.run("poly_subst_composition", [&]() -> std::string {
    for (int t = 0; t < 20; ++t) {
      PhasePoly f = rng.poly(3, 1, 3);
      PhasePoly A = rng.poly(2, 1, 2), B = rng.poly(2, 1, 2);
      PhasePoly C = rng.poly(2, 1, 2), D = rng.poly(2, 1, 2);
      PhasePoly lhs = subst(subst(f, A, B), C, D);
      PhasePoly rhs = subst(f, subst(A, C, D), subst(B, C, D));
      if (lhs != rhs) return mismatch("subst composition", lhs, rhs);
    }
    return {};
  });

  suite.run("poly_eval_subst_consistency", [&]() -> std::string {
    for (int t = 0; t < 25; ++t) {
      PhasePoly f = rng.poly(3, 2, 3), A = rng.poly(2, 1, 2), B = rng.poly(2, 1, 2);
      Rational q = rng.rational(), p = rng.rational(), hb = rng.rational(3, 2);
      GaussianRational qv = eval(A, q, p, hb);
      GaussianRational pv = eval(B, q, p, hb);
      if (!qv.is_real() || !pv.is_real()) continue;  // point must stay real
      GaussianRational lhs = eval(subst(f, A, B), q, p, hb);
      GaussianRational rhs = eval(f, qv.re, pv.re, hb);
      if (!(lhs == rhs)) return "eval/subst mismatch: " + lhs.str() + " vs " + rhs.str();
    }
    return {};
  });

  suite.run("star_associativity", [&]() -> std::string {
    for (int t = 0; t < 200; ++t) {
      PhasePoly f = rng.poly(), g = rng.poly(), h = rng.poly();
      PhasePoly lhs = star(star(f, g), h);
      PhasePoly rhs = star(f, star(g, h));
      if (lhs != rhs) {
        return "triple (" + format_poly(f) + ", " + format_poly(g) + ", " +
               format_poly(h) + "): " + mismatch("star associativity", lhs, rhs);
      }
    }
    return {};
  });

  suite.run("star_identity", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly();
      if (star(PhasePoly(1), f) != f) return "left identity failed for f = " + format_poly(f);
      if (star(f, PhasePoly(1)) != f) return "right identity failed for f = " + format_poly(f);
    }
    return {};
  });

  suite.run("star_dual_agreement", [&]() -> std::string {
    for (int t = 0; t < 100; ++t) {
      PhasePoly f = rng.poly(), g = rng.poly();
      PhasePoly a = star(f, g), b = star_bopp(f, g);
      if (a != b) {
        return "pair (" + format_poly(f) + ", " + format_poly(g) + "): " +
               mismatch("series vs Bopp", a, b);
      }
    }
    return {};
  });

  suite.run("star_classical_limit", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly(), g = rng.poly();
      PhasePoly lhs = drop_hbar_terms(star(f, g));
      PhasePoly rhs = drop_hbar_terms(f * g);
      if (lhs != rhs) return mismatch("hbar -> 0 limit", lhs, rhs);
    }
    return {};
  });

  suite.run("moyal_leading_order", [&]() -> std::string {
    // hbar-free operands: the odd-power structure grades the deformation,
    // so operand hbar factors would shift the parity.
    const PhasePoly i_hbar = mono(0, 0, 1, kI);
    for (int t = 0; t < 100; ++t) {
      PhasePoly f = rng.poly(5, 0, 4), g = rng.poly(5, 0, 4);
      PhasePoly rest = moyal_bracket(f, g) - i_hbar * poisson(f, g);
      for (const auto& [m, c] : rest.terms()) {
        if (m.hbar_pow < 3 || m.hbar_pow % 2 == 0) {
          return "pair (" + format_poly(f) + ", " + format_poly(g) +
                 ") leaves non-odd correction " + format_poly(rest);
        }
      }
    }
    return {};
  });

  suite.run("poisson_antisymmetry_jacobi", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly(4, 1), g = rng.poly(4, 1), h = rng.poly(4, 1);
      if (!(poisson(f, g) + poisson(g, f)).is_zero()) return "antisymmetry failed";
      PhasePoly jac = poisson(f, poisson(g, h)) + poisson(g, poisson(h, f)) +
                      poisson(h, poisson(f, g));
      if (!jac.is_zero()) return "Jacobi failed: " + format_poly(jac);
      if (!poisson(f, f).is_zero()) return "self-bracket nonzero";
    }
    return {};
  });

  suite.run("moyal_antisymmetry_jacobi", [&]() -> std::string {
    for (int t = 0; t < 25; ++t) {
      PhasePoly f = rng.poly(4, 1), g = rng.poly(4, 1), h = rng.poly(4, 1);
      if (!(moyal_bracket(f, g) + moyal_bracket(g, f)).is_zero()) {
        return "antisymmetry failed";
      }
      PhasePoly jac = moyal_bracket(f, moyal_bracket(g, h)) +
                      moyal_bracket(g, moyal_bracket(h, f)) +
                      moyal_bracket(h, moyal_bracket(f, g));
      if (!jac.is_zero()) return "Jacobi failed: " + format_poly(jac);
      if (!moyal_bracket(f, f).is_zero()) return "self-bracket nonzero";
    }
    return {};
  });

  suite.run("cross_laws", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly(4, 1), g = rng.poly(4, 1), h = rng.poly(4, 1);
      if (cross(f, g + h) != cross(f, g) + cross(f, h)) return "left distributivity failed";
      if (cross(f + g, h) != cross(f, h) + cross(g, h)) return "right distributivity failed";
      GaussianRational s(Rational(3, 2));
      if (cross(f * s, g) != cross(f, g) * s) return "scalar law failed";
      if (cross(g, f) - cross(f, g) != poisson(g, f)) {
        return mismatch("antisymmetrization", cross(g, f) - cross(f, g), poisson(g, f));
      }
    }
    return {};
  });

  suite.run("cross_nonassoc_witness", [&]() -> std::string {
    auto [f, g, h] = cross_nonassoc_witness();
    PhasePoly lhs = cross(cross(f, g), h);
    PhasePoly rhs = cross(f, cross(g, h));
    if (lhs == rhs) return "pinned triple unexpectedly associates";
    if (star(star(f, g), h) != star(f, star(g, h))) {
      return "same triple fails star associativity";
    }
    return {};
  });

  suite.run("parse_format_roundtrip", [&]() -> std::string {
    for (int t = 0; t < 100; ++t) {
      PhasePoly f = rng.poly(5, 2, 6);
      std::string text = format_poly(f);
      PhasePoly back = parse_poly(text);
      if (back != f) return "roundtrip failed for \"" + text + "\"";
      if (format_poly(back) != text) return "format not idempotent for \"" + text + "\"";
    }
    return {};
  });

  suite.run("parser_fuzz_total", [&]() -> std::string {
    const std::string alphabet = "qp hbari0123456789+-*/^()_.,;$\\\"\n\t";
    for (int t = 0; t < 2000; ++t) {
      int len = rng.uniform(0, 24);
      std::string text;
      for (int k = 0; k < len; ++k) {
        if (rng.uniform(0, 4) == 0) {
          text.push_back(static_cast<char>(rng.uniform(1, 255)));
        } else {
          text.push_back(alphabet[static_cast<std::size_t>(
              rng.uniform(0, static_cast<int>(alphabet.size()) - 1))]);
        }
      }
      try {
        (void)parse_poly(text);
      } catch (const ParseError&) {
        // positioned rejection is the contract
      }
    }
    return {};
  });

  suite.run("json_roundtrip", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly f = rng.poly(5, 2, 6);
      PhasePoly back = poly_from_json_string(poly_to_json_string(f));
      if (back != f) return "JSON roundtrip failed for " + format_poly(f);
    }
    return {};
  });
}

// ---------------------------------------------------------------------------
// covariance: generator actions, flows, sp(2,R), covariance defects
// ---------------------------------------------------------------------------

std::vector<PhasePoly> monomial_basis(unsigned max_degree) {
  std::vector<PhasePoly> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    for (unsigned a = 0; a <= d; ++a) {
      out.push_back(mono(a, d - a, 0, 1));
    }
  }
  return out;
}

void run_covariance(Rng& rng, std::vector<VerifyCase>& out) {
  Suite suite(out, "covariance");
  const PhasePoly q = PhasePoly::q();
  const PhasePoly p = PhasePoly::p();
  const GaussianRational half_i(Rational(0), Rational(1, 2));

  suite.run("sp2_operators_exact", [&]() -> std::string {
    auto gens = sp2_generators();
    PolyDiffOperator boost;  // (i hbar/2)(p dq + q dp)
    boost.add_term({1, 0}, mono(0, 1, 1, half_i));
    boost.add_term({0, 1}, mono(1, 0, 1, half_i));
    PolyDiffOperator rotation;  // (-i hbar/2)(p dq - q dp)
    rotation.add_term({1, 0}, mono(0, 1, 1, -half_i));
    rotation.add_term({0, 1}, mono(1, 0, 1, half_i));
    PolyDiffOperator squeeze;  // (i hbar/2)(p dp - q dq)
    squeeze.add_term({0, 1}, mono(0, 1, 1, half_i));
    squeeze.add_term({1, 0}, mono(1, 0, 1, -half_i));
    const PolyDiffOperator* expected[] = {&boost, &rotation, &squeeze};
    for (int k = 0; k < 3; ++k) {
      if (!(gens[k].op == *expected[k])) {
        return gens[k].label + ": got " + format_operator(gens[k].op) +
               "; want " + format_operator(*expected[k]);
      }
    }
    return {};
  });

  suite.run("sp2_action_examples", [&]() -> std::string {
    auto gens = sp2_generators();
    PhasePoly got = gens[0].op.apply(q);
    PhasePoly want = mono(0, 1, 1, half_i);  // (i hbar/2) p
    if (got != want) return mismatch("boost on q", got, want);
    got = gens[1].op.apply(p);
    want = mono(1, 0, 1, half_i);  // (i hbar/2) q
    if (got != want) return mismatch("rotation on p", got, want);
    if (gens[1].op.apply(p) != bracket_apply(BracketKind::MoyalRaw, gens[1].symbol, p)) {
      return "operator disagrees with the raw bracket";
    }
    return {};
  });

  suite.run("sp2_raw_equals_ihbar_classical", [&]() -> std::string {
    const PhasePoly i_hbar = mono(0, 0, 1, kI);
    for (const auto& gen : sp2_generators()) {
      for (const PhasePoly& f : monomial_basis(8)) {
        PhasePoly lhs = bracket_apply(BracketKind::MoyalRaw, gen.symbol, f);
        PhasePoly rhs = i_hbar * bracket_apply(BracketKind::Classical, gen.symbol, f);
        if (lhs != rhs) {
          return gen.label + " on " + format_poly(f) + ": " + mismatch("", lhs, rhs);
        }
      }
    }
    return {};
  });

  suite.run("adjoint_homomorphism_sp2", [&]() -> std::string {
    auto gens = sp2_generators();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        PhasePoly bracket_gen = moyal_bracket(gens[i].symbol, gens[j].symbol);
        for (const PhasePoly& f : monomial_basis(6)) {
          PhasePoly lhs =
              bracket_apply(BracketKind::MoyalRaw, gens[i].symbol,
                            bracket_apply(BracketKind::MoyalRaw, gens[j].symbol, f)) -
              bracket_apply(BracketKind::MoyalRaw, gens[j].symbol,
                            bracket_apply(BracketKind::MoyalRaw, gens[i].symbol, f));
          PhasePoly rhs = bracket_apply(BracketKind::MoyalRaw, bracket_gen, f);
          if (lhs != rhs) {
            return gens[i].label + "," + gens[j].label + " on " + format_poly(f) +
                   ": " + mismatch("", lhs, rhs);
          }
        }
      }
    }
    return {};
  });

  suite.run("adjoint_homomorphism_random", [&]() -> std::string {
    for (int t = 0; t < 25; ++t) {
      PhasePoly A1 = rng.poly(4, 0, 3, false);
      PhasePoly A2 = rng.poly(4, 0, 3, false);
      PhasePoly bracket_gen = moyal_bracket(A1, A2);
      for (const PhasePoly& f : monomial_basis(6)) {
        PhasePoly lhs = bracket_apply(BracketKind::MoyalRaw, A1,
                                      bracket_apply(BracketKind::MoyalRaw, A2, f)) -
                        bracket_apply(BracketKind::MoyalRaw, A2,
                                      bracket_apply(BracketKind::MoyalRaw, A1, f));
        PhasePoly rhs = bracket_apply(BracketKind::MoyalRaw, bracket_gen, f);
        if (lhs != rhs) {
          return "generators (" + format_poly(A1) + ", " + format_poly(A2) +
                 ") on " + format_poly(f) + ": " + mismatch("", lhs, rhs);
        }
      }
    }
    return {};
  });

  suite.run("classical_structure_constants", [&]() -> std::string {
    for (int t = 0; t < 25; ++t) {
      PhasePoly G1 = rng.poly(4, 0, 3, false);
      PhasePoly G2 = rng.poly(4, 0, 3, false);
      PhasePoly bracket_gen = poisson(G1, G2);
      for (const PhasePoly& f : monomial_basis(6)) {
        PhasePoly lhs = poisson(G1, poisson(G2, f)) - poisson(G2, poisson(G1, f));
        PhasePoly rhs = poisson(bracket_gen, f);
        if (lhs != rhs) {
          return "generators (" + format_poly(G1) + ", " + format_poly(G2) +
                 ") on " + format_poly(f) + ": " + mismatch("", lhs, rhs);
        }
      }
    }
    return {};
  });

  suite.run("classical_leibniz_flow", [&]() -> std::string {
    const int order = 5;
    for (int t = 0; t < 15; ++t) {
      PhasePoly G = rng.poly(4, 0, 3, false);
      PhasePoly f = rng.poly(3, 1, 3), g = rng.poly(3, 1, 3);
      PolySeries prod = flow_series(BracketKind::Classical, G, f * g, order);
      prod.resize(order + 1);
      PolySeries fs = flow_series(BracketKind::Classical, G, f, order);
      PolySeries gs = flow_series(BracketKind::Classical, G, g, order);
      PolySeries rhs = series_product(fs, gs, order);
      for (int k = 0; k <= order; ++k) {
        if (prod[k] != rhs[k]) {
          return "G = " + format_poly(G) + " at order " + std::to_string(k) +
                 ": " + mismatch("", prod[k], rhs[k]);
        }
      }
    }
    return {};
  });

  suite.run("classical_covariance_zero", [&]() -> std::string {
    const int order = 5;
    for (int t = 0; t < 50; ++t) {
      PhasePoly G = rng.poly(4, 0, 3, false);
      PhasePoly f = rng.poly(3, 1, 3);
      PolySeries defect = covariance_defect_series(BracketKind::Classical, G, f, order);
      for (int k = 0; k <= order; ++k) {
        if (!defect[k].is_zero()) {
          return "G = " + format_poly(G) + ", f = " + format_poly(f) +
                 " breaks at order " + std::to_string(k) + ": " + format_poly(defect[k]);
        }
      }
    }
    return {};
  });

  suite.run("quantum_quadratic_covariance", [&]() -> std::string {
    const int order = 8;
    std::vector<PhasePoly> quadratics = {
        (p * p + q * q) * GaussianRational(Rational(1, 2)),
        p * q * GaussianRational(Rational(1, 2)),
        (q * q - p * p) * GaussianRational(Rational(1, 4)),
        q * q, p, q + p};
    for (const PhasePoly& G : quadratics) {
      for (int t = 0; t < 5; ++t) {
        PhasePoly f = rng.poly(3, 1, 3);
        PolySeries defect =
            covariance_defect_series(BracketKind::MoyalNormalized, G, f, order);
        for (int k = 0; k <= order; ++k) {
          if (!defect[k].is_zero()) {
            return "G = " + format_poly(G) + ", f = " + format_poly(f) +
                   " breaks at order " + std::to_string(k) + ": " +
                   format_poly(defect[k]);
          }
        }
      }
    }
    return {};
  });

  suite.run("quartic_covariance_violation", [&]() -> std::string {
    PhasePoly G = pow(q, 4) * GaussianRational(Rational(1, 4));
    PhasePoly defect = covariance_defect(BracketKind::MoyalNormalized, G, 1,
                                         pow(p, 3), std::nullopt);
    PhasePoly want = mono(1, 0, 2, GaussianRational(Rational(-3, 2)));
    if (defect != want) return mismatch("defect value", defect, want);
    if (defect.min_hbar_power() != 2) return "lowest hbar power is not 2";
    return {};
  });

  suite.run("normalized_minus_classical_even", [&]() -> std::string {
    for (int t = 0; t < 50; ++t) {
      PhasePoly G = rng.poly(5, 0, 3, false);
      PhasePoly f = rng.poly(4, 0, 3);  // hbar-free, as in moyal_leading_order
      PhasePoly d = bracket_apply(BracketKind::MoyalNormalized, G, f) -
                    bracket_apply(BracketKind::Classical, G, f);
      for (const auto& [m, c] : d.terms()) {
        if (m.hbar_pow < 2 || m.hbar_pow % 2 == 1) {
          return "G = " + format_poly(G) + ", f = " + format_poly(f) +
                 " leaves correction " + format_poly(d);
        }
      }
    }
    return {};
  });

  suite.run("flow_group_law", [&]() -> std::string {
    struct Case {
      BracketKind kind;
      PhasePoly G;
      PhasePoly f;
    };
    std::vector<Case> cases = {
        {BracketKind::MoyalNormalized, pow(q, 4) * GaussianRational(Rational(1, 4)), pow(p, 3)},
        {BracketKind::MoyalNormalized, pow(q, 3) * GaussianRational(Rational(1, 3)), p * p},
        {BracketKind::Classical, p * p * GaussianRational(Rational(1, 2)), rng.poly(4, 1, 3)},
    };
    GaussianRational c1(Rational(2, 3)), c2(Rational(-1, 5));
    for (const auto& [kind, G, f] : cases) {
      PhasePoly two_step =
          flow(kind, G, c1, flow(kind, G, c2, f, std::nullopt), std::nullopt);
      PhasePoly one_step = flow(kind, G, c1 + c2, f, std::nullopt);
      if (two_step != one_step) {
        return "G = " + format_poly(G) + ": " + mismatch("", two_step, one_step);
      }
    }
    return {};
  });

  suite.run("star_covariance_zero", [&]() -> std::string {
    const int order = 6;
    std::vector<PhasePoly> gens = {
        (p * p + q * q) * GaussianRational(Rational(1, 2)),
        pow(q, 3) * GaussianRational(Rational(1, 3)),
        p * q * GaussianRational(Rational(1, 2))};
    std::vector<PhasePoly> args = {q, p, p * p * q};
    for (const PhasePoly& A : gens) {
      for (const PhasePoly& f : args) {
        for (const PhasePoly& g : args) {
          PolySeries defect = star_covariance_defect_series(A, f, g, order);
          for (int k = 0; k <= order; ++k) {
            if (!defect[k].is_zero()) {
              return "A = " + format_poly(A) + ", f = " + format_poly(f) +
                     ", g = " + format_poly(g) + " breaks at order " +
                     std::to_string(k) + ": " + format_poly(defect[k]);
            }
          }
        }
      }
    }
    return {};
  });

  suite.run("symplectic_defect_checks", [&]() -> std::string {
    if (!symplectic_defect(q - p, p, SymplecticKind::Classical).is_zero()) {
      return "shear pair flagged non-canonical";
    }
    if (!symplectic_defect(q, p + pow(q, 3), SymplecticKind::Quantum).is_zero()) {
      return "gauge pair flagged non-canonical";
    }
    PhasePoly scaling = symplectic_defect(q * GaussianRational(2),
                                          p * GaussianRational(2),
                                          SymplecticKind::Classical);
    if (scaling != PhasePoly(3)) {
      return mismatch("non-symplectic scaling", scaling, PhasePoly(3));
    }
    return {};
  });

  suite.run("linear_subst_vs_flow", [&]() -> std::string {
    SymplecticMatrix shear(1, 0, -1, 1);
    PhasePoly drift_gen = p * p * GaussianRational(Rational(1, 2));
    for (int t = 0; t < 10; ++t) {
      PhasePoly f = rng.poly(4, 1, 3);
      PhasePoly lhs = linear_symplectic_subst(shear, f);
      PhasePoly rhs = flow(BracketKind::Classical, drift_gen, 1, f, std::nullopt);
      if (lhs != rhs) return mismatch("shear vs flow", lhs, rhs);
      if (linear_symplectic_subst(SymplecticMatrix::identity(), f) != f) {
        return "identity matrix is not the identity map";
      }
      PhasePoly back = linear_symplectic_subst(shear.inverse(),
                                               linear_symplectic_subst(shear, f));
      if (back != f) return mismatch("inverse", back, f);
    }
    try {
      SymplecticMatrix bad(2, 0, 0, 2);
      return "determinant-4 matrix accepted";
    } catch (const NotSymplecticError&) {
    }
    return {};
  });

  suite.run("quartic_generator_operator", [&]() -> std::string {
    for (Rational lambda : {Rational(1), Rational(3, 7)}) {
      PhasePoly A = (p * p + q * q) * GaussianRational(Rational(1, 2)) +
                    pow(q, 4) * GaussianRational(lambda / 4);
      PolyDiffOperator got = generator_as_operator(A);
      PolyDiffOperator want;  // -i hbar (p dq - q dp) + i hbar l (q^3 dp - (hbar/2)^2 q dp^3)
      want.add_term({1, 0}, mono(0, 1, 1, -kI));
      want.add_term({0, 1}, mono(1, 0, 1, kI));
      want.add_term({0, 1}, mono(3, 0, 1, kI * GaussianRational(lambda)));
      want.add_term({0, 3}, mono(1, 0, 3, -kI * GaussianRational(lambda / 4)));
      if (!(got == want)) {
        return "lambda = " + rational_to_string(lambda) + ": got " +
               format_operator(got) + "; want " + format_operator(want);
      }
    }
    return {};
  });

  suite.run("transform_coordinates_examples", [&]() -> std::string {
    PhasePoly drift_gen = p * p * GaussianRational(Rational(1, 2));
    auto [Q1, P1] = transform_coordinates(BracketKind::Classical, drift_gen, 1,
                                          std::nullopt);
    if (Q1 != q - p || P1 != p) return "drift coordinates wrong";
    auto [Q2, P2] = transform_coordinates(BracketKind::MoyalNormalized,
                                          p * q * GaussianRational(Rational(1, 2)),
                                          1, 3);
    if (Q2 != q * GaussianRational(Rational(29, 48)) ||
        P2 != p * GaussianRational(Rational(79, 48))) {
      return "squeeze coordinates wrong: " + format_poly(Q2) + ", " + format_poly(P2);
    }
    auto [Q3, P3] = transform_coordinates(
        BracketKind::MoyalNormalized,
        pow(q, 4) * GaussianRational(Rational(1, 4)), 1, std::nullopt);
    if (Q3 != q || P3 != p + pow(q, 3)) return "gauge kick coordinates wrong";
    return {};
  });

  suite.run("nonterminating_flow_detected", [&]() -> std::string {
    try {
      flow(BracketKind::Classical, q * q * p * p, 1, q, std::nullopt, 16);
    } catch (const NonTerminatingError& e) {
      return e.iterations() == 16 ? std::string{} : "wrong iteration count";
    }
    return "non-nilpotent exact flow did not fail";
  });
}

// ---------------------------------------------------------------------------
// kick: kicked-map evolution and defect identities
// ---------------------------------------------------------------------------

void run_kick(Rng& rng, std::vector<VerifyCase>& out) {
  Suite suite(out, "kick");
  const PhasePoly q = PhasePoly::q();
  const PhasePoly p = PhasePoly::p();
  const Rational lambda(3, 2), period(2, 3);

  auto potentials = []() {
    std::vector<PhasePoly> out;
    out.push_back(pow(PhasePoly::q(), 3) * GaussianRational(Rational(1, 3)));
    out.push_back(pow(PhasePoly::q(), 4) * GaussianRational(Rational(1, 4)));
    out.push_back(pow(PhasePoly::q(), 5) * GaussianRational(Rational(1, 5)));
    return out;
  };

  // -(lambda hbar^2/4) V'''(q - T p), the p^3 defect
  auto p3_defect_value = [&](const KickedSystem& sys) {
    PhasePoly third = diff(diff(sys.potential_derivative(), Var::Q), Var::Q);
    PhasePoly q_step = PhasePoly::q() - GaussianRational(sys.period()) * PhasePoly::p();
    PhasePoly value = subst(third, q_step, PhasePoly(0));
    value *= GaussianRational(-sys.lambda() / 4);
    return shift_hbar(value, 2);
  };

  suite.run("coordinate_covariance", [&]() -> std::string {
    std::vector<PhasePoly> vs = potentials();
    for (int t = 0; t < 3; ++t) vs.push_back(rng.poly(5, 0, 3, false));
    for (PhasePoly v : vs) {
      PhasePoly v_q_only;
      for (const auto& [m, c] : v.terms()) {
        v_q_only.add_term(Monomial{m.q_pow, 0, 0}, c.re);
      }
      KickedSystem sys(v_q_only, lambda, period);
      for (const PhasePoly& f : {q, p}) {
        PhasePoly lhs = quantum_step_observable(sys, f);
        PhasePoly rhs = classical_step_observable(sys, f);
        if (lhs != rhs) {
          return "V = " + format_poly(v_q_only) + " on " + format_poly(f) + ": " +
                 mismatch("", lhs, rhs);
        }
      }
    }
    return {};
  });

  suite.run("canonicity", [&]() -> std::string {
    std::vector<PhasePoly> vs = potentials();
    for (const PhasePoly& v : vs) {
      KickedSystem sys(v, lambda, period);
      PhasePoly Q = classical_step_observable(sys, q);
      PhasePoly P = classical_step_observable(sys, p);
      if (!symplectic_defect(Q, P, SymplecticKind::Classical).is_zero()) {
        return "classical canonicity broken for V = " + format_poly(v);
      }
      if (!symplectic_defect(quantum_step_observable(sys, q),
                             quantum_step_observable(sys, p),
                             SymplecticKind::Quantum)
               .is_zero()) {
        return "quantum canonicity broken for V = " + format_poly(v);
      }
    }
    return {};
  });

  suite.run("defect_p3q_stated_closed_form", [&]() -> std::string {
    // The asserted closed form for the one-step defect of p^3 q:
    // -(3/2) lambda hbar^2 V'''(q - T p).
    for (const PhasePoly& v : potentials()) {
      KickedSystem sys(v, lambda, period);
      PhasePoly defect = quantum_classical_defect(sys, pow(p, 3) * q);
      PhasePoly third = diff(diff(sys.potential_derivative(), Var::Q), Var::Q);
      PhasePoly stated = subst(third, q - GaussianRational(period) * p, PhasePoly(0));
      stated *= GaussianRational(Rational(-3, 2) * lambda);
      stated = shift_hbar(stated, 2);
      if (defect != stated) {
        return "V = " + format_poly(v) + ": computed defect " +
               format_poly(defect) + " differs from stated closed form " +
               format_poly(stated);
      }
    }
    return {};
  });

  suite.run("defect_p3q_computed_closed_form", [&]() -> std::string {
    // The defect the evolution actually produces factors through the p^3
    // defect: defect(p^3 q) = defect(p^3) * (q - T p).
    std::vector<PhasePoly> vs = potentials();
    for (int t = 0; t < 2; ++t) vs.push_back(rng.poly(4, 0, 2, false));
    for (PhasePoly v : vs) {
      PhasePoly v_q_only;
      for (const auto& [m, c] : v.terms()) {
        v_q_only.add_term(Monomial{m.q_pow, 0, 0}, c.re);
      }
      KickedSystem sys(v_q_only, lambda, period);
      PhasePoly q_step = q - GaussianRational(period) * p;
      PhasePoly defect = quantum_classical_defect(sys, pow(p, 3) * q);
      PhasePoly want = p3_defect_value(sys) * q_step;
      if (defect != want) {
        return "V = " + format_poly(v_q_only) + ": " + mismatch("", defect, want);
      }
      PhasePoly p3 = quantum_classical_defect(sys, pow(p, 3));
      if (p3 * q_step != defect) {
        return "V = " + format_poly(v_q_only) + ": defect does not factor";
      }
    }
    return {};
  });

  suite.run("gauge_defect_formula", [&]() -> std::string {
    const Rational a(2, 3);
    for (const PhasePoly& v : potentials()) {
      KickedSystem sys(v, lambda, period);
      PhasePoly got = gauge_defect(sys, a);
      PhasePoly want = p3_defect_value(sys) * GaussianRational(a);
      if (got != want) {
        return "V = " + format_poly(v) + ": " + mismatch("", got, want);
      }
      if (!gauge_defect(sys, Rational(0)).is_zero()) return "a = 0 defect nonzero";
    }
    return {};
  });

  suite.run("low_degree_defect_zero", [&]() -> std::string {
    for (const PhasePoly& v : potentials()) {
      KickedSystem sys(v, lambda, period);
      std::vector<PhasePoly> obs = {PhasePoly(1), q, p, q * q, q * p, p * p};
      for (int t = 0; t < 5; ++t) obs.push_back(rng.poly(2, 0, 3));
      for (const PhasePoly& f : obs) {
        PhasePoly d = quantum_classical_defect(sys, f);
        if (!d.is_zero()) {
          return "V = " + format_poly(v) + ", f = " + format_poly(f) +
                 ": defect " + format_poly(d);
        }
      }
    }
    return {};
  });

  suite.run("defect_hbar_order", [&]() -> std::string {
    for (const PhasePoly& v : potentials()) {
      KickedSystem sys(v, lambda, period);
      for (int t = 0; t < 6; ++t) {
        PhasePoly f = rng.poly(5, 0, 3);
        PhasePoly d = quantum_classical_defect(sys, f);
        if (!d.is_zero() && d.min_hbar_power() < 2) {
          return "V = " + format_poly(v) + ", f = " + format_poly(f) +
                 ": defect " + format_poly(d) + " has hbar order < 2";
        }
      }
    }
    return {};
  });

  suite.run("kappa_nonreducibility", [&]() -> std::string {
    PhasePoly v = pow(q, 4) * GaussianRational(Rational(1, 4));
    auto defect = [&](Rational l, Rational t) {
      KickedSystem sys(v, std::move(l), std::move(t));
      return quantum_classical_defect(sys, pow(p, 3) * q);
    };
    if (defect(Rational(1), Rational(2)) == defect(Rational(2), Rational(1))) {
      return "defects coincide for (1,2) vs (2,1)";
    }
    if (defect(Rational(1, 2), Rational(3)) == defect(Rational(3, 2), Rational(1))) {
      return "defects coincide for (1/2,3) vs (3/2,1)";
    }
    return {};
  });

  suite.run("trajectory_rational_float_agreement", [&]() -> std::string {
    KickedSystem sys(q * q * GaussianRational(Rational(1, 2)), Rational(1, 10),
                     Rational(1, 10));
    ExactPhasePoint exact_start{Rational(1, 2), Rational(1, 3), Rational(0)};
    PhasePoint float_start{0.5, 1.0 / 3.0, 0.0};
    auto exact = trajectory(sys, exact_start, 50);
    auto approx = trajectory(sys, float_start, 50);
    for (std::size_t k = 0; k < exact.size(); ++k) {
      double eq = rational_to_double(exact[k].q);
      double ep = rational_to_double(exact[k].p);
      double dq = std::abs(approx[k].q - eq) / std::max(1.0, std::abs(eq));
      double dp = std::abs(approx[k].p - ep) / std::max(1.0, std::abs(ep));
      if (dq > 1e-9 || dp > 1e-9) {
        return "step " + std::to_string(k) + " drifted by " +
               std::to_string(std::max(dq, dp));
      }
    }
    return {};
  });

  suite.run("trajectory_basics", [&]() -> std::string {
    KickedSystem quartic(pow(q, 4) * GaussianRational(Rational(1, 4)),
                         Rational(1), Rational(1));
    PhasePoint pt{1.0, 1.0, 0.0};
    PhasePoint next = classical_step_point(quartic, pt);
    if (next.q != 0.0 || next.p != 1.0) return "quartic step wrong";
    auto single = trajectory(quartic, pt, 1);
    if (single.size() != 2 || single[1].q != next.q || single[1].p != next.p) {
      return "trajectory disagrees with single step";
    }
    if (trajectory(quartic, pt, 0).size() != 1) return "n = 0 trajectory wrong";
    KickedSystem drift(PhasePoly(0), Rational(0), Rational(1));
    auto free = trajectory(drift, PhasePoint{0.0, 1.0, 0.0}, 2);
    if (free[1].q != -1.0 || free[2].q != -2.0 || free[2].p != 1.0) {
      return "free drift trajectory wrong";
    }
    KickedSystem pure_kick(pow(q, 3) * GaussianRational(Rational(1, 3)),
                           Rational(2), Rational(0));
    PhasePoint kicked = classical_step_point(pure_kick, PhasePoint{3.0, 1.0, 0.0});
    if (kicked.q != 3.0 || kicked.p != 1.0 + 2.0 * 9.0) return "pure kick wrong";
    return {};
  });
}

// ---------------------------------------------------------------------------
// starexp: star powers, exponential series, conjugation equivalence
// ---------------------------------------------------------------------------

void run_starexp(Rng& rng, std::vector<VerifyCase>& out) {
  Suite suite(out, "starexp");
  const PhasePoly q = PhasePoly::q();
  const PhasePoly p = PhasePoly::p();
  const PhasePoly H0 = (p * p + q * q) * GaussianRational(Rational(1, 2));

  suite.run("star_power_examples", [&]() -> std::string {
    if (star_power(q, 2) != q * q) return "q*q under star wrong";
    PhasePoly want = H0 * H0 - PhasePoly::term({0, 0, 2}, GaussianRational(Rational(1, 4)));
    if (star_power(H0, 2) != want) return mismatch("H0 star square", star_power(H0, 2), want);
    if (star_power(H0, 2) != star(H0, H0)) return "star_power(A,2) != star(A,A)";
    PhasePoly A = rng.poly(4, 1, 3);
    if (star_power(A, 1) != A) return "star_power(A,1) != A";
    if (star_power(A, 0) != PhasePoly(1)) return "star_power(A,0) != 1";
    return {};
  });

  suite.run("exponential_series_basics", [&]() -> std::string {
    PhasePoly A = rng.poly(3, 1, 3);
    if (star_exponential_series(A, 0, 7) != PhasePoly(1)) return "c = 0 series not 1";
    PhasePoly first = star_exponential_series(q, kI, 1);
    if (first != PhasePoly(1) + q * kI) return "order-1 truncation wrong";
    PhasePoly quad = star_exponential_series(H0, 1, 2);
    PhasePoly want = PhasePoly(1) + H0 +
                     star(H0, H0) * GaussianRational(Rational(1, 2));
    if (quad != want) return mismatch("order-2 series", quad, want);
    return {};
  });

  suite.run("two_route_equivalence", [&]() -> std::string {
    const int order = 6;
    std::vector<PhasePoly> gens = {H0, pow(q, 3) * GaussianRational(Rational(1, 3)),
                                   p * q * GaussianRational(Rational(1, 2))};
    std::vector<PhasePoly> args = {q, p, p * p * q};
    for (const PhasePoly& A : gens) {
      for (const PhasePoly& f : args) {
        for (const GaussianRational& c : {GaussianRational(1), kI,
                                          GaussianRational(Rational(2, 3))}) {
          PhasePoly d = mlt_equivalence_defect(A, c, f, order);
          if (!d.is_zero()) {
            return "A = " + format_poly(A) + ", f = " + format_poly(f) +
                   ", c = " + c.str() + ": defect " + format_poly(d);
          }
        }
      }
    }
    return {};
  });

  suite.run("conjugate_matches_bracket_flow", [&]() -> std::string {
    const int order = 4;
    for (int t = 0; t < 10; ++t) {
      PhasePoly A = rng.poly(3, 0, 3, false);
      PhasePoly f = rng.poly(3, 0, 3);
      GaussianRational c(Rational(1, 2));
      PhasePoly lhs = star_conjugate(A, c, f, order);
      PhasePoly rhs = flow(BracketKind::MoyalRaw, A, -c, f, order);
      if (lhs != rhs) {
        return "A = " + format_poly(A) + ", f = " + format_poly(f) + ": " +
               mismatch("", lhs, rhs);
      }
      if (star_conjugate(A, 0, f, order) != f) return "c = 0 conjugation moved f";
    }
    return {};
  });

  suite.run("group_property", [&]() -> std::string {
    const int order = 5;
    GaussianRational c1(Rational(1, 2)), c2(Rational(-1, 3));
    for (const PhasePoly& A : {H0, pow(q, 3) * GaussianRational(Rational(1, 3))}) {
      std::vector<PhasePoly> u;
      for (int k = 0; k <= order; ++k) {
        u.push_back(star_power(A, static_cast<unsigned>(k)));
        GaussianRational inv_fact(1);
        for (int j = 2; j <= k; ++j) inv_fact /= GaussianRational(j);
        u.back() *= inv_fact;
      }
      for (int k = 0; k <= order; ++k) {
        PhasePoly conv;
        GaussianRational c1_pow(1);
        for (int i = 0; i <= k; ++i) {
          GaussianRational c2_pow(1);
          for (int j = 0; j < k - i; ++j) c2_pow *= c2;
          conv += star(u[static_cast<std::size_t>(i)],
                       u[static_cast<std::size_t>(k - i)]) *
                  (c1_pow * c2_pow);
          c1_pow *= c1;
        }
        GaussianRational sum_pow(1);
        for (int j = 0; j < k; ++j) sum_pow *= (c1 + c2);
        PhasePoly direct = u[static_cast<std::size_t>(k)] * sum_pow;
        if (conv != direct) {
          return "A = " + format_poly(A) + " at order " + std::to_string(k) +
                 ": " + mismatch("", conv, direct);
        }
      }
    }
    return {};
  });

  suite.run("unitarity_shadow", [&]() -> std::string {
    for (int t = 0; t < 10; ++t) {
      PhasePoly A = rng.poly(3, 0, 3, false);
      PhasePoly f = rng.poly(3, 0, 3, false);
      GaussianRational c = kI * GaussianRational(rng.rational(5, 3));
      PhasePoly conj = star_conjugate(A, c, f, 5);
      if (!conj.has_real_coefficients()) {
        return "A = " + format_poly(A) + ", f = " + format_poly(f) +
               ": conjugate " + format_poly(conj) + " is not real";
      }
    }
    return {};
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "covariance", "kick",
                                                 "starexp", "all"};
  return names;
}

VerifyReport run_suite(const std::string& name, std::uint64_t seed) {
  VerifyReport report;
  report.suite = name;
  report.seed = seed;
  Rng rng(seed);
  if (name == "algebra") {
    run_algebra(rng, report.cases);
  } else if (name == "covariance") {
    run_covariance(rng, report.cases);
  } else if (name == "kick") {
    run_kick(rng, report.cases);
  } else if (name == "starexp") {
    run_starexp(rng, report.cases);
  } else if (name == "all") {
    run_algebra(rng, report.cases);
    run_covariance(rng, report.cases);
    run_kick(rng, report.cases);
    run_starexp(rng, report.cases);
  } else {
    throw UnknownSuiteError(name);
  }
  return report;
}

std::string report_to_json_string(const VerifyReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const VerifyCase& c : report.cases) {
    nlohmann::json entry{{"name", c.name}, {"pass", c.pass}};
    if (c.counterexample.empty()) {
      entry["counterexample"] = nullptr;
    } else {
      entry["counterexample"] = c.counterexample;
    }
    cases.push_back(std::move(entry));
  }
  nlohmann::json root{
      {"suite", report.suite}, {"seed", report.seed}, {"cases", std::move(cases)}};
  return root.dump();
}

}  // namespace moyal
