#pragma once

#include "moyal/diff_operator.hpp"
#include "moyal/poly.hpp"
#include "moyal/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moyal {

/// Which bracket a generator acts through.
///  - Classical:        f -> poisson(G, f)
///  - MoyalRaw:         f -> moyal_bracket(G, f)
///  - MoyalNormalized:  f -> moyal_bracket(G, f) / (i hbar); its hbar -> 0
///    part is the Classical action, and divisibility is automatic because
///    every Moyal-bracket term carries hbar.
enum class BracketKind { Classical, MoyalRaw, MoyalNormalized };

inline constexpr int kDefaultFlowCap = 64;

PhasePoly bracket_apply(BracketKind kind, const PhasePoly& G, const PhasePoly& f);

// Coefficients of the exponential flow: element k holds bracket^k f / k!.
// With order = nullopt the series must terminate (a bracket power vanishes)
// within max_iter applications, else NonTerminatingError.
std::vector<PhasePoly> flow_series(BracketKind kind, const PhasePoly& G,
                                   const PhasePoly& f,
                                   std::optional<int> order,
                                   int max_iter = kDefaultFlowCap);

// sum_k c^k/k! bracket^k f, truncated at `order` or exact when nullopt.
PhasePoly flow(BracketKind kind, const PhasePoly& G, const GaussianRational& c,
               const PhasePoly& f, std::optional<int> order,
               int max_iter = kDefaultFlowCap);

// The flow applied to the coordinate pair (q, p).
std::pair<PhasePoly, PhasePoly> transform_coordinates(
    BracketKind kind, const PhasePoly& G, const GaussianRational& c,
    std::optional<int> order, int max_iter = kDefaultFlowCap);

// poisson(Q,P) - 1 (Classical) or moyal(Q,P) - i*hbar (Quantum); zero
// certifies the pair is canonical to the computed order.
enum class SymplecticKind { Classical, Quantum };
PhasePoly symplectic_defect(const PhasePoly& Q, const PhasePoly& P,
                            SymplecticKind kind);

// The three quadratic generators of linear canonical maps, with their exact
// differential-operator forms.
struct Sp2Generator {
  std::string label;
  PhasePoly symbol;
  PolyDiffOperator op;
};
std::array<Sp2Generator, 3> sp2_generators();

/// 2x2 matrix with rational entries and determinant exactly 1.
class SymplecticMatrix {
 public:
  // Throws NotSymplecticError unless a*d - b*c == 1.
  SymplecticMatrix(Rational a, Rational b, Rational c, Rational d);

  static SymplecticMatrix identity() { return {1, 0, 0, 1}; }
  SymplecticMatrix inverse() const;

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

 private:
  Rational a_, b_, c_, d_;
};

// f(Z) where (P, Q) = (a p + b q, c p + d q); exact substitution.
PhasePoly linear_symplectic_subst(const SymplecticMatrix& m, const PhasePoly& f);

// --- series utilities -------------------------------------------------------
//
// A PolySeries holds coefficients of powers of the flow parameter: element k
// is the polynomial multiplying c^k. They keep both branches of a defect
// truncated at the same power, so a nonzero defect is never a truncation
// artifact.

using PolySeries = std::vector<PhasePoly>;

PolySeries series_product(const PolySeries& a, const PolySeries& b, int order);
PolySeries series_star_product(const PolySeries& a, const PolySeries& b, int order);
PolySeries series_substitute(const PhasePoly& f, const PolySeries& q_series,
                             const PolySeries& p_series, int order);
PhasePoly series_evaluate(const PolySeries& s, const GaussianRational& c);

// flow(kind,G,c,f,order) - subst(f, Q, P) with (Q,P) the transformed
// coordinates; both branches expanded to the same power of c.
PhasePoly covariance_defect(BracketKind kind, const PhasePoly& G,
                            const GaussianRational& c, const PhasePoly& f,
                            std::optional<int> order,
                            int max_iter = kDefaultFlowCap);

// Per-order defect coefficients for a truncated flow (tests use this to
// assert vanishing order by order rather than after evaluation at c).
PolySeries covariance_defect_series(BracketKind kind, const PhasePoly& G,
                                    const PhasePoly& f, int order,
                                    int max_iter = kDefaultFlowCap);

// star(flow f, flow g) - flow(star(f,g)) with MoyalRaw flows of generator A,
// truncated at the same order of c on both sides.
PhasePoly star_covariance_defect(const PhasePoly& A, const GaussianRational& c,
                                 const PhasePoly& f, const PhasePoly& g,
                                 std::optional<int> order,
                                 int max_iter = kDefaultFlowCap);

PolySeries star_covariance_defect_series(const PhasePoly& A, const PhasePoly& f,
                                         const PhasePoly& g, int order,
                                         int max_iter = kDefaultFlowCap);

}  // namespace moyal
