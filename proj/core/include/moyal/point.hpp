#pragma once

#include "moyal/poly.hpp"
#include "moyal/rational.hpp"

#include <complex>
#include <stdexcept>

namespace moyal {

// Numeric phase-space point with an hbar evaluation context. Num is double
// (float mode) or Rational (exact mode).
template <typename Num>
struct PhasePointT {
  Num q{};
  Num p{};
  Num hbar{};
};

using PhasePoint = PhasePointT<double>;
using ExactPhasePoint = PhasePointT<Rational>;

inline GaussianRational eval(const PhasePoly& f, const ExactPhasePoint& pt) {
  return eval(f, pt.q, pt.p, pt.hbar);
}

// Float mode requires hbar >= 0.
inline std::complex<double> eval(const PhasePoly& f, const PhasePoint& pt) {
  if (pt.hbar < 0.0) {
    throw std::invalid_argument("negative hbar in float-mode phase point");
  }
  return eval(f, pt.q, pt.p, pt.hbar);
}

}  // namespace moyal
