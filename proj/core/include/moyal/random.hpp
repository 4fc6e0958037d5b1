#pragma once

#include "moyal/poly.hpp"
#include "moyal/rational.hpp"

#include <cstdint>
#include <random>

namespace moyal {

// Seeded generator for random polynomials. Uses mt19937_64 output directly
// (no std distributions) so sequences are identical across platforms and a
// seeded run is reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // inclusive bounds
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational rational(int max_abs_num = 9, int max_den = 4) {
    int num = uniform(-max_abs_num, max_abs_num);
    int den = uniform(1, max_den);
    return Rational(num, den);
  }

  GaussianRational coefficient(bool allow_imaginary = true) {
    Rational re = rational();
    Rational im = allow_imaginary && uniform(0, 1) == 1 ? rational() : Rational(0);
    return {re, im};
  }

  Monomial monomial(int max_qp_degree, int max_hbar_degree) {
    int total = uniform(0, max_qp_degree);
    int qpart = uniform(0, total);
    return Monomial{static_cast<unsigned>(qpart),
                    static_cast<unsigned>(total - qpart),
                    static_cast<unsigned>(uniform(0, max_hbar_degree))};
  }

  // Nonzero with high probability; may come out zero through cancellation,
  // which the properties tolerate.
  PhasePoly poly(int max_qp_degree = 5, int max_hbar_degree = 2,
                 int max_terms = 4, bool allow_imaginary = true) {
    PhasePoly out;
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      out.add_term(monomial(max_qp_degree, max_hbar_degree),
                   coefficient(allow_imaginary));
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace moyal
