#include "moyal/flows.hpp"

#include "moyal/errors.hpp"
#include "moyal/star.hpp"

namespace moyal {

PhasePoly bracket_apply(BracketKind kind, const PhasePoly& G, const PhasePoly& f) {
  switch (kind) {
    case BracketKind::Classical:
      return poisson(G, f);
    case BracketKind::MoyalRaw:
      return moyal_bracket(G, f);
    case BracketKind::MoyalNormalized:
      return div_i_hbar(moyal_bracket(G, f));
  }
  return {};
}

std::vector<PhasePoly> flow_series(BracketKind kind, const PhasePoly& G,
                                   const PhasePoly& f, std::optional<int> order,
                                   int max_iter) {
  std::vector<PhasePoly> out{f};
  const bool exact = !order.has_value();
  const int cap = exact ? max_iter : *order;
  PhasePoly level = f;
  for (int k = 1; k <= cap; ++k) {
    level = bracket_apply(kind, G, level);
    if (level.is_zero()) return out;
    out.push_back(level * GaussianRational(Rational(1, k)));
    level = out.back();  // keep 1/k! folded in: bracket is linear
  }
  if (exact) {
    throw NonTerminatingError(
        "exact flow did not terminate within " + std::to_string(max_iter) +
            " bracket applications (non-nilpotent generator)",
        max_iter);
  }
  return out;
}

PhasePoly flow(BracketKind kind, const PhasePoly& G, const GaussianRational& c,
               const PhasePoly& f, std::optional<int> order, int max_iter) {
  return series_evaluate(flow_series(kind, G, f, order, max_iter), c);
}

std::pair<PhasePoly, PhasePoly> transform_coordinates(BracketKind kind,
                                                      const PhasePoly& G,
                                                      const GaussianRational& c,
                                                      std::optional<int> order,
                                                      int max_iter) {
  return {flow(kind, G, c, PhasePoly::q(), order, max_iter),
          flow(kind, G, c, PhasePoly::p(), order, max_iter)};
}

PhasePoly symplectic_defect(const PhasePoly& Q, const PhasePoly& P,
                            SymplecticKind kind) {
  if (kind == SymplecticKind::Classical) {
    return poisson(Q, P) - PhasePoly(1);
  }
  return moyal_bracket(Q, P) - PhasePoly::term({0, 0, 1}, GaussianRational::i());
}

std::array<Sp2Generator, 3> sp2_generators() {
  PhasePoly q = PhasePoly::q();
  PhasePoly p = PhasePoly::p();
  PhasePoly boost = (q * q - p * p) * GaussianRational(Rational(1, 4));
  PhasePoly rotation = (q * q + p * p) * GaussianRational(Rational(1, 4));
  PhasePoly squeeze = p * q * GaussianRational(Rational(1, 2));
  return {Sp2Generator{"boost", boost, generator_as_operator(boost)},
          Sp2Generator{"rotation", rotation, generator_as_operator(rotation)},
          Sp2Generator{"squeeze", squeeze, generator_as_operator(squeeze)}};
}

SymplecticMatrix::SymplecticMatrix(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1) {
    throw NotSymplecticError("matrix determinant is not 1: det = " +
                             rational_to_string(a_ * d_ - b_ * c_));
  }
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  return {d_, -b_, -c_, a_};
}

PhasePoly linear_symplectic_subst(const SymplecticMatrix& m, const PhasePoly& f) {
  PhasePoly q = PhasePoly::q();
  PhasePoly p = PhasePoly::p();
  PhasePoly P = GaussianRational(m.a()) * p + GaussianRational(m.b()) * q;
  PhasePoly Q = GaussianRational(m.c()) * p + GaussianRational(m.d()) * q;
  return subst(f, Q, P);
}

namespace {

template <typename Mul>
PolySeries convolve(const PolySeries& a, const PolySeries& b, int order, Mul mul) {
  PolySeries out(static_cast<std::size_t>(order) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > static_cast<std::size_t>(order)) break;
    for (std::size_t j = 0; j + i < static_cast<std::size_t>(order) + 1 && j < b.size(); ++j) {
      out[i + j] += mul(a[i], b[j]);
    }
  }
  return out;
}

}  // namespace

PolySeries series_product(const PolySeries& a, const PolySeries& b, int order) {
  return convolve(a, b, order,
                  [](const PhasePoly& x, const PhasePoly& y) { return x * y; });
}

PolySeries series_star_product(const PolySeries& a, const PolySeries& b, int order) {
  return convolve(a, b, order,
                  [](const PhasePoly& x, const PhasePoly& y) { return star(x, y); });
}

PolySeries series_substitute(const PhasePoly& f, const PolySeries& q_series,
                             const PolySeries& p_series, int order) {
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  std::vector<PolySeries> q_pows{PolySeries{PhasePoly(1)}};
  std::vector<PolySeries> p_pows{PolySeries{PhasePoly(1)}};
  auto power = [&](std::vector<PolySeries>& cache, const PolySeries& base,
                   unsigned k) -> const PolySeries& {
    while (cache.size() <= k) {
      cache.push_back(series_product(cache.back(), base, order));
    }
    return cache[k];
  };
  PolySeries out(n);
  for (const auto& [m, c] : f.terms()) {
    PolySeries term = series_product(power(q_pows, q_series, m.q_pow),
                                     power(p_pows, p_series, m.p_pow), order);
    for (std::size_t k = 0; k < n; ++k) {
      if (term[k].is_zero()) continue;
      out[k] += shift_hbar(term[k] * c, m.hbar_pow);
    }
  }
  return out;
}

PhasePoly series_evaluate(const PolySeries& s, const GaussianRational& c) {
  PhasePoly out;
  GaussianRational ck(1);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) ck *= c;
    if (ck.is_zero()) break;
    out += s[k] * ck;
  }
  return out;
}

PolySeries covariance_defect_series(BracketKind kind, const PhasePoly& G,
                                    const PhasePoly& f, int order, int max_iter) {
  PolySeries flowed = flow_series(kind, G, f, order, max_iter);
  flowed.resize(static_cast<std::size_t>(order) + 1);
  PolySeries q_series = flow_series(kind, G, PhasePoly::q(), order, max_iter);
  PolySeries p_series = flow_series(kind, G, PhasePoly::p(), order, max_iter);
  PolySeries composed = series_substitute(f, q_series, p_series, order);
  for (std::size_t k = 0; k < flowed.size(); ++k) flowed[k] -= composed[k];
  return flowed;
}

PhasePoly covariance_defect(BracketKind kind, const PhasePoly& G,
                            const GaussianRational& c, const PhasePoly& f,
                            std::optional<int> order, int max_iter) {
  if (!order.has_value()) {
    // All three exact flows are complete sums, so no truncation bookkeeping
    // is needed: subtract directly.
    PhasePoly flowed = flow(kind, G, c, f, std::nullopt, max_iter);
    auto [Q, P] = transform_coordinates(kind, G, c, std::nullopt, max_iter);
    return flowed - subst(f, Q, P);
  }
  return series_evaluate(covariance_defect_series(kind, G, f, *order, max_iter), c);
}

PolySeries star_covariance_defect_series(const PhasePoly& A, const PhasePoly& f,
                                         const PhasePoly& g, int order,
                                         int max_iter) {
  PolySeries fs = flow_series(BracketKind::MoyalRaw, A, f, order, max_iter);
  PolySeries gs = flow_series(BracketKind::MoyalRaw, A, g, order, max_iter);
  PolySeries hs =
      flow_series(BracketKind::MoyalRaw, A, star(f, g), order, max_iter);
  hs.resize(static_cast<std::size_t>(order) + 1);
  PolySeries out = series_star_product(fs, gs, order);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= hs[k];
  return out;
}

PhasePoly star_covariance_defect(const PhasePoly& A, const GaussianRational& c,
                                 const PhasePoly& f, const PhasePoly& g,
                                 std::optional<int> order, int max_iter) {
  if (!order.has_value()) {
    PhasePoly ff = flow(BracketKind::MoyalRaw, A, c, f, std::nullopt, max_iter);
    PhasePoly fg = flow(BracketKind::MoyalRaw, A, c, g, std::nullopt, max_iter);
    PhasePoly fh =
        flow(BracketKind::MoyalRaw, A, c, star(f, g), std::nullopt, max_iter);
    return star(ff, fg) - fh;
  }
  return series_evaluate(star_covariance_defect_series(A, f, g, *order, max_iter), c);
}

}  // namespace moyal
